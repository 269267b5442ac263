#ifndef GQ_REPORT_HPP
#define GQ_REPORT_HPP

#include <map>
#include <string>
#include <vector>

#include "json.hpp"

namespace gq {

// Machine-readable run report: parameters echoed, typed results, tolerances,
// one verdict per checked claim. Serializes deterministically (ordered keys;
// wall time only on request so that identical invocations print identical
// bytes).
struct RunReport {
  std::string subcommand;
  nlohmann::json params = nlohmann::json::object();
  nlohmann::json results = nlohmann::json::object();
  nlohmann::json tolerances = nlohmann::json::object();
  std::map<std::string, bool> verdicts;
  // CSV rows: header + data rows, used with --format csv.
  std::vector<std::string> csv_header;
  std::vector<std::vector<std::string>> csv_rows;

  bool pass() const;
  std::string to_json(bool with_timing = false, double wall_ms = 0.0) const;
  std::string to_csv() const;
};

// One experiment per subcommand; defaults follow the documented conventions.
RunReport run_spectrum_ho(double hbar, int cutoff);
RunReport run_sphere_dim(int max_level);
RunReport run_sphere_gram(int max_level);
RunReport run_verlinde(int genus, int level, bool table);
RunReport run_pw_check(const std::vector<int>& sizes);
RunReport run_holonomy(double hbar, double p, const std::string& preset);
RunReport run_bs_scan(double hbar, double lambda, double pmin, double pmax,
                      double tol);
RunReport run_weil(double hbar, int max_level, double tol);
RunReport run_gvh();
RunReport run_dirac_q4(int degree);
RunReport run_vacuum_angles(int cutoff, double hbar);
RunReport run_bks_p2(int grid, double hbar);
RunReport run_stationary_phase(double hbar);
RunReport run_fubini_study();
RunReport run_atlas_check();
RunReport run_coh_cylinder(int cutoff, double hbar, double width);

// Library-side quadrature for the sphere Gram diagonal (the closed form's
// cross-check route, also reachable from the CLI).
double sphere_gram_quadrature(int level, int a);

}  // namespace gq

#endif

#include "singlab/report_json.hpp"

#include <fstream>

#include <json.hpp>

#include "singlab/errors.hpp"
#include "singlab/version.hpp"

namespace singlab {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json complex_json(const cplx& z) { return ordered_json::array({z.real(), z.imag()}); }

ordered_json point_json(const std::vector<cplx>& coords) {
  ordered_json a = ordered_json::array();
  for (const cplx& z : coords) a.push_back(complex_json(z));
  return a;
}

}  // namespace

std::string basin_report_json(const BasinReport& report) {
  ordered_json j;
  j["family"] = report.family;
  j["version"] = kVersion;
  j["seed"] = report.seed;

  ordered_json sched;
  ordered_json ts = ordered_json::array();
  for (const Rational& t : report.schedule.ts) ts.push_back(t.str());
  sched["t_seq"] = std::move(ts);
  sched["r_esc"] = report.schedule.r_escape;
  sched["eps_w"] = report.schedule.eps_w;
  if (report.schedule.region_radius) sched["region_radius"] = *report.schedule.region_radius;
  j["schedule"] = std::move(sched);

  ordered_json tol;
  tol["residual"] = report.tolerances.residual_tol;
  tol["cluster"] = report.tolerances.cluster_tol;
  tol["budget"] = report.tolerances.groebner.budget;
  j["tolerances"] = std::move(tol);

  ordered_json per_t = ordered_json::array();
  for (std::size_t li = 0; li < report.per_t.size(); ++li) {
    ordered_json level;
    level["t"] = report.schedule.ts[li].str();
    ordered_json points = ordered_json::array();
    for (const SolvedPoint& p : report.per_t[li]) {
      ordered_json pt;
      pt["coords"] = point_json(p.point.coords);
      pt["multiplicity"] = p.multiplicity;
      pt["residual"] = p.residual;
      points.push_back(std::move(pt));
    }
    level["points"] = std::move(points);
    if (li < report.out_of_region.size() && report.out_of_region[li] > 0)
      level["out_of_region"] = report.out_of_region[li];
    per_t.push_back(std::move(level));
  }
  j["per_t"] = std::move(per_t);

  ordered_json trajectories = ordered_json::array();
  for (const Trajectory& tr : report.trajectories) {
    ordered_json t;
    t["classification"] = to_string(tr.classification);
    t["limit"] = point_json(tr.limit);
    t["multiplicity"] = tr.multiplicity;
    t["w_proximity"] = tr.w_proximity;
    if (tr.classification == LimitClass::ToW) t["w_smooth_at_limit"] = tr.w_smooth_at_limit;
    trajectories.push_back(std::move(t));
  }
  j["trajectories"] = std::move(trajectories);
  j["mu_along_W"] = report.mu_along_w;
  return j.dump(2) + "\n";
}

void write_basin_report(const std::string& path, const BasinReport& report) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write report '" + path + "'");
  out << basin_report_json(report);
}

}  // namespace singlab

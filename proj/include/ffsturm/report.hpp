#ifndef FFSTURM_REPORT_HPP
#define FFSTURM_REPORT_HPP

#include <json.hpp>

#include "ffsturm/cache.hpp"
#include "ffsturm/drinfeld.hpp"
#include "ffsturm/elliptic.hpp"
#include "ffsturm/hecke.hpp"
#include "ffsturm/sturm.hpp"

namespace ffsturm {

using json = nlohmann::ordered_json;

/// Disables the runtime harmonicity self-checks (CLI --no-selfcheck).
void set_runtime_selfchecks(bool on);
bool runtime_selfchecks();

json point_json(const ProjPoint& pt);
json graph_json(const QuotientGraph& g);
json cochain_json(const QuotientGraph& g, const HarmonicCochain& f, int basis_index);
json bound_report_json(const BoundReport& r);
json aptable_json(const APTable& t);
APTable aptable_from_json(const nlohmann::json& doc);
CurveModel curve_from_json(const nlohmann::json& doc);
json matrix_json(const QMat& m);

json cmd_graph(int q, const Poly& n);
json cmd_fourier(int q, const Poly& n, int upto);
json cmd_hecke(int q, const Poly& n, const Poly& m, const std::string& space);
json cmd_bounds(int q, const Poly& n, bool with_true, int jobs);

struct TableResult {
  json doc;
  std::string rendered;
  bool partial = false;
};

TableResult cmd_ttable(int q, int m, int nmax, int jobs, double cell_timeout);
TableResult cmd_compare_bounds(int q, int nmin, int nmax, int jobs,
                               const DiskCache& cache);
json cmd_compare_bounds_level(int q, const Poly& n, int jobs, const DiskCache& cache);
json cmd_report(int q, const Poly& n, int jobs);
json cmd_ap(const nlohmann::json& curve_doc, int maxdeg, int jobs);
json cmd_isogeny(int q, const Poly& conductor, const nlohmann::json& t1,
                 const nlohmann::json& t2);
json cmd_drinfeld(int q, const Poly& n, int k, int m, int ell);

/// Per-level data used by compare-bounds, with disk caching.
struct LevelBounds {
  int b_true = 0;
  int b_prime = 0;
};
LevelBounds level_bounds_cached(int q, const Poly& n, const DiskCache& cache);

}  // namespace ffsturm

#endif

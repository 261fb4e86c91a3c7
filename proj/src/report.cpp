#include "cpd/report.hpp"

#include "cpd/taxonomy.hpp"

namespace cpd::report {

using nlohmann::json;

json params_json(SystemId id, const SystemParams& params) {
  return {{"alpha1", params.alpha1},
          {"a1", params.a1},
          {std::string(third_param_name(id)), params.third}};
}

namespace {

json matrix_json(const Matrix2& m) {
  return json::array({json::array({m(0, 0), m(0, 1)}),
                      json::array({m(1, 0), m(1, 1)})});
}

json list_json(const taxonomy::CaseList& list) {
  return json(std::vector<int>(list.begin(), list.end()));
}

json census_json(const taxonomy::AssumptionCensus& c) {
  return {{"total", c.total},
          {"trivial_within", c.trivial_within},
          {"nontrivial", c.nontrivial},
          {"trivial_members", list_json(c.trivial_members)}};
}

}  // namespace

json analyze(SystemId id, const SystemParams& params) {
  params.validate(id);
  const Region region = classify_region(id, params);

  json eqs = json::array();
  for (const auto& e : equilibria(id, params)) {
    json item = {{"point", json::array({e.point.x, e.point.y})},
                 {"interior", e.interior},
                 {"stability", to_string(e.stability)},
                 {"eigenvalues", json::array({e.lambda, e.mu})},
                 {"jacobian", matrix_json(e.jacobian)}};
    item["eigvec_stable"] =
        e.eigvec_stable ? json::array({(*e.eigvec_stable)[0], (*e.eigvec_stable)[1]})
                        : json(nullptr);
    eqs.push_back(std::move(item));
  }

  const auto h = check_theorem_hypotheses(id, params);
  json checks = json::array();
  for (const auto& c : h.checks) {
    checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  }
  json hyp = {{"applicable", h.applicable},
              {"status", h.applicable ? (h.all_passed() ? "pass" : "fail")
                                      : "not_applicable"},
              {"checks", checks}};
  hyp["det_at_saddle"] = h.applicable ? json(h.det_at_saddle) : json(nullptr);

  return {{"schema", "cpd-analyze-1"},
          {"system", std::string(to_string(id))},
          {"params", params_json(id, params)},
          {"region", region_label(region)},
          {"region_tag", to_string(region)},
          {"equilibria", eqs},
          {"hypotheses", hyp}};
}

json taxonomy_census() {
  using namespace taxonomy;
  const auto& lists = published_lists();
  const auto violations = consistency_violations(lists);
  return {
      {"schema", "cpd-taxonomy-1"},
      {"universe", lists.universe_size},
      {"total_cases", count_pairs(ListName::Universe)},
      {"competitive_cases", count_pairs(ListName::Competitive)},
      {"trivial_cases", count_pairs(ListName::Trivial)},
      {"nontrivial_competitive_cases", nontrivial_competitive_count()},
      {"strongly_competitive_cases", count_pairs(ListName::StronglyCompetitive)},
      {"assumption1", census_json(assumption_census(1))},
      {"assumption2", census_json(assumption_census(2))},
      {"lists",
       {{"competitive", list_json(lists.competitive)},
        {"trivial", list_json(lists.trivial)},
        {"assumption1", list_json(lists.assumption1)},
        {"assumption2", list_json(lists.assumption2)},
        {"strongly_competitive", list_json(lists.strongly_competitive)}}},
      {"consistent", violations.empty()},
  };
}

json basin_sidecar(const BasinRaster& raster, const std::string& image_name) {
  json fractions = json::object();
  for (auto [fate, frac] : fate_fractions(raster)) fractions[to_string(fate)] = frac;
  json gray = json::object();
  for (Fate f : {Fate::Lower, Fate::Upper, Fate::Saddle, Fate::Undecided,
                 Fate::Undefined}) {
    gray[to_string(f)] = fate_gray(f);
  }
  return {{"schema", "cpd-basin-1"},
          {"image", image_name},
          {"system", std::string(to_string(raster.system))},
          {"params", params_json(raster.system, raster.params)},
          {"region", region_label(classify_region(raster.system, raster.params))},
          {"window",
           {{"x_lo", raster.window.x_lo},
            {"x_hi", raster.window.x_hi},
            {"y_lo", raster.window.y_lo},
            {"y_hi", raster.window.y_hi}}},
          {"width", raster.width},
          {"height", raster.height},
          {"row_order", "top_is_y_hi"},
          {"max_iter", raster.max_iter},
          {"fractions", fractions},
          {"gray_levels", gray}};
}

}  // namespace cpd::report

#pragma once

// Census of the special cases of the general linear-fractional system
//
//   x' = (a1 + b1 x + c1 y) / (A1 + B1 x + C1 y)
//   y' = (a2 + b2 x + c2 y) / (A2 + B2 x + C2 y)
//
// Each equation independently takes one of 49 numbered forms; a special case
// is an ordered pair of form numbers. The lists below are the published
// memberships; the number-to-form mapping itself is not reproduced here.

#include <cstddef>
#include <optional>
#include <set>
#include <string_view>
#include <vector>

namespace cpd::taxonomy {

using CaseList = std::set<int>;

struct CaseLists {
  int universe_size = 49;
  CaseList competitive;
  CaseList trivial;
  CaseList assumption1;
  CaseList assumption2;
  CaseList strongly_competitive;
};

/// The published lists.
const CaseLists& published_lists();

enum class ListName {
  Universe,
  Competitive,
  Trivial,
  Assumption1,
  Assumption2,
  StronglyCompetitive,
};

std::string_view to_string(ListName name) noexcept;
std::optional<ListName> parse_list_name(std::string_view text) noexcept;

/// |list|^2, the number of ordered pairs drawn from the list.
std::size_t count_pairs(ListName name, const CaseLists& lists = published_lists());

/// Throws std::invalid_argument for an unknown list name.
std::size_t count_pairs(std::string_view name,
                        const CaseLists& lists = published_lists());

/// |competitive|^2 - |trivial|^2.
std::size_t nontrivial_competitive_count(
    const CaseLists& lists = published_lists());

struct AssumptionCensus {
  std::size_t total = 0;
  std::size_t trivial_within = 0;
  std::size_t nontrivial = 0;
  CaseList trivial_members;
};

/// which = 1 or 2; throws std::invalid_argument otherwise.
AssumptionCensus assumption_census(int which,
                                   const CaseLists& lists = published_lists());

/// Structural consistency of the lists (subset relations, range 1..49).
/// Returns the violated relations; empty when consistent.
std::vector<std::string_view> consistency_violations(
    const CaseLists& lists = published_lists());

}  // namespace cpd::taxonomy

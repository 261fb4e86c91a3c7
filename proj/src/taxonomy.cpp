#include "cpd/taxonomy.hpp"

#include <algorithm>
#include <iterator>
#include <stdexcept>
#include <string>

namespace cpd::taxonomy {

namespace {

const CaseList& select(ListName name, const CaseLists& lists) {
  switch (name) {
    case ListName::Competitive: return lists.competitive;
    case ListName::Trivial: return lists.trivial;
    case ListName::Assumption1: return lists.assumption1;
    case ListName::Assumption2: return lists.assumption2;
    case ListName::StronglyCompetitive: return lists.strongly_competitive;
    case ListName::Universe: break;
  }
  throw std::logic_error("universe is not a stored list");
}

CaseList intersect(const CaseList& a, const CaseList& b) {
  CaseList out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::inserter(out, out.end()));
  return out;
}

bool subset(const CaseList& inner, const CaseList& outer) {
  return std::includes(outer.begin(), outer.end(), inner.begin(), inner.end());
}

}  // namespace

const CaseLists& published_lists() {
  static const CaseLists lists{
      49,
      {1, 3, 4, 5, 6, 9, 11, 13, 14, 15, 19, 21, 24, 27, 29, 38, 42},
      {1, 3, 4, 5, 9, 11, 13, 19, 24},
      {4, 6, 13, 14, 15, 19, 21, 27, 29, 38, 42},
      {3, 6, 11, 14, 15, 21, 24, 27, 29, 38, 42},
      {6, 14, 15, 21, 27, 29, 38, 42},
  };
  return lists;
}

std::string_view to_string(ListName name) noexcept {
  switch (name) {
    case ListName::Universe: return "universe";
    case ListName::Competitive: return "competitive";
    case ListName::Trivial: return "trivial";
    case ListName::Assumption1: return "assumption1";
    case ListName::Assumption2: return "assumption2";
    case ListName::StronglyCompetitive: return "strongly_competitive";
  }
  return "unknown";
}

std::optional<ListName> parse_list_name(std::string_view text) noexcept {
  for (ListName n : {ListName::Universe, ListName::Competitive,
                     ListName::Trivial, ListName::Assumption1,
                     ListName::Assumption2, ListName::StronglyCompetitive}) {
    if (text == to_string(n)) return n;
  }
  return std::nullopt;
}

std::size_t count_pairs(ListName name, const CaseLists& lists) {
  const std::size_t n = name == ListName::Universe
                            ? static_cast<std::size_t>(lists.universe_size)
                            : select(name, lists).size();
  return n * n;
}

std::size_t count_pairs(std::string_view name, const CaseLists& lists) {
  auto parsed = parse_list_name(name);
  if (!parsed) throw std::invalid_argument("unknown list '" + std::string(name) + "'");
  return count_pairs(*parsed, lists);
}

std::size_t nontrivial_competitive_count(const CaseLists& lists) {
  return count_pairs(ListName::Competitive, lists) -
         count_pairs(ListName::Trivial, lists);
}

AssumptionCensus assumption_census(int which, const CaseLists& lists) {
  if (which != 1 && which != 2) {
    throw std::invalid_argument("assumption must be 1 or 2");
  }
  const CaseList& list = which == 1 ? lists.assumption1 : lists.assumption2;
  AssumptionCensus c;
  c.trivial_members = intersect(list, lists.trivial);
  c.total = list.size() * list.size();
  c.trivial_within = c.trivial_members.size() * c.trivial_members.size();
  c.nontrivial = c.total - c.trivial_within;
  return c;
}

std::vector<std::string_view> consistency_violations(const CaseLists& lists) {
  std::vector<std::string_view> bad;
  if (!subset(lists.trivial, lists.competitive)) bad.push_back("trivial <= competitive");
  if (!subset(lists.strongly_competitive, lists.competitive)) {
    bad.push_back("strongly_competitive <= competitive");
  }
  if (!subset(lists.assumption1, lists.competitive)) bad.push_back("assumption1 <= competitive");
  if (!subset(lists.assumption2, lists.competitive)) bad.push_back("assumption2 <= competitive");
  if (!subset(lists.strongly_competitive,
              intersect(lists.assumption1, lists.assumption2))) {
    bad.push_back("strongly_competitive <= assumption1 & assumption2");
  }
  for (ListName n : {ListName::Competitive, ListName::Trivial,
                     ListName::Assumption1, ListName::Assumption2,
                     ListName::StronglyCompetitive}) {
    const CaseList& l = select(n, lists);
    if (!l.empty() && (*l.begin() < 1 || *l.rbegin() > lists.universe_size)) {
      bad.push_back("all lists within 1..49");
      break;
    }
  }
  return bad;
}

}  // namespace cpd::taxonomy

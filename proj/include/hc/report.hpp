// =============================================================================
// report.hpp
//
// Deterministic text and JSON rendering of search results, models, hulls,
// and Skolemization pipelines.  Output contains no timing or host details,
// so identical inputs render identical bytes.
// =============================================================================
#pragma once

#include <string>

#include "hc/arena.hpp"
#include "hc/model.hpp"
#include "hc/search.hpp"
#include "hc/skolem.hpp"

namespace hc {

enum class Format { Text, Json };

std::string render_outcome(const Arena& a, const SearchOutcome& o, Format fmt);
std::string render_refutation(const Arena& a, const RefutationResult& r,
                              Format fmt);
std::string render_universal(const Arena& a, const UniversalCheck& u,
                             Format fmt);
std::string render_model(const Arena& a, const FiniteHerbrandModel& m,
                         Format fmt);
std::string render_hull(const Arena& a, const TermSet& lambda, Format fmt);
std::string render_skolemization(const Arena& a, const SkolemizedFormula& sk,
                                 const SkolemRegistry& reg, Format fmt);
std::string render_theory(const Arena& a, const Theory& t,
                          const SkolemRegistry& reg, Format fmt);

}  // namespace hc

#ifndef GEOPROOF_PROOFDOC_HPP
#define GEOPROOF_PROOFDOC_HPP

#include <string>
#include <vector>

#include "geoproof/formula.hpp"
#include "geoproof/prover.hpp"

namespace geoproof::proofdoc {

struct RenderOptions {
    bool hide_simple_axioms = true;
    enum class Format { Plain, LatexIsh };
    Format format = Format::Plain;
};

// One premise atom, no existentials, exactly one conclusion conjunction:
// the universal-implication steps the rendered proof omits.
bool is_simple_axiom(const formula::CoherentFormula& ax);

// Numbered, indented proof text. Hidden steps are skipped and their
// conclusions attributed to their source facts in later citations.
std::string render_text(const prover::Proof& p, const formula::Theory& t,
                        const RenderOptions& opts = {});

// Axiom names in first-use order; with include_simple off, simple axioms and
// generated support axioms are dropped.
std::vector<std::string> used_axioms(const prover::Proof& p, const formula::Theory& t,
                                     bool include_simple = false);

} // namespace geoproof::proofdoc

#endif

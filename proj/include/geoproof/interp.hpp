#ifndef GEOPROOF_INTERP_HPP
#define GEOPROOF_INTERP_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "geoproof/formula.hpp"
#include "geoproof/gcl.hpp"
#include "geoproof/geometry.hpp"
#include "geoproof/prover.hpp"

namespace geoproof::interp {

// Visual interpretation of one axiom: which universals feed the construction
// and which existentials it must place, plus the GCL procedure that does it.
struct InterpProcedure {
    std::string axiom;
    std::vector<std::string> inputs;  // axiom universal names, declaration order
    std::vector<std::string> outputs; // axiom existential names, in order
    std::string procedure_name;
};

class InterpRegistry {
public:
    // Ships interpretations for the fixture axioms (segment extension,
    // equilateral-triangle construction, right-angle decoration, midpoint
    // existence, and the parallelism/parallelogram decorations).
    static InterpRegistry builtin();

    void add(InterpProcedure entry, gcl::Procedure procedure);

    // Manifest lines: `interp <axiom> inputs(A,B) outputs(X) = <proc>` with a
    // `gcl <file>` directive naming the procedure library; '%' comments.
    void load_manifest(const std::string& text, const gcl::FileResolver& resolver);

    const InterpProcedure* find(const std::string& axiom) const;
    const gcl::Procedure* procedure(const std::string& name) const;
    const std::map<std::string, gcl::Procedure>& procedures() const { return procedures_; }

    // inputs+outputs arity check against the axiom's quantifiers.
    void validate_against(const formula::Theory& t) const;

private:
    std::map<std::string, InterpProcedure> entries_;
    std::map<std::string, gcl::Procedure> procedures_;
};

// Executes the registered procedure of one MP step against the model:
// assigns witness points and appends the body's draw ops at model.next_layer
// (incrementing it). Witness-free unregistered steps are no-ops.
GeoModel apply_step(const GeoModel& model, const prover::ProofStep& step,
                    const InterpRegistry& reg, const formula::Theory& t);

struct NondegeneracyOptions {
    bool pairwise_neq = true;
    std::vector<std::array<std::string, 3>> ncol_triples; // variable names of c
};

// ⊤ ⇒ ∃x⃗(premises ∧ extras), named <c.name>_exists.
formula::CoherentFormula premises_conjecture(const formula::CoherentFormula& c,
                                             const NondegeneracyOptions& opts = {});

// Fails with DegenerateModelError when premise constants collide or a
// requested non-collinearity degenerates.
void verify_nondegeneracy(const GeoModel& model, const std::vector<std::string>& constants,
                          const std::vector<formula::Atom>& premise_atoms);

// The by-hand path of premise realization: evaluate a user construction
// procedure (parameters = premise constants) at layer 0.
GeoModel realize_premises(const gcl::GCLProgram& exists_program,
                          const std::string& procedure_name,
                          const std::vector<std::string>& constants,
                          const std::vector<formula::Atom>& premise_atoms, std::uint64_t seed);

} // namespace geoproof::interp

#endif

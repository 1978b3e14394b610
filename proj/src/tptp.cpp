#include "geoproof/tptp.hpp"

#include <algorithm>
#include <cassert>

#include "geoproof/error.hpp"

namespace geoproof::tptp {

using formula::Atom;
using formula::CoherentFormula;
using formula::Conjunction;
using formula::Signature;
using formula::Substitution;
using formula::Term;

FofPtr make_atom(Atom a) {
    auto node = std::make_shared<FofNode>();
    node->kind = FofNode::Kind::Atom;
    node->atom = std::move(a);
    return node;
}

FofPtr make_node(FofNode::Kind kind, std::vector<FofPtr> children, std::vector<std::string> vars) {
    auto node = std::make_shared<FofNode>();
    node->kind = kind;
    node->children = std::move(children);
    node->vars = std::move(vars);
    return node;
}

// ---------------------------------------------------------------- lexer

namespace {

enum class Tok {
    LParen, RParen, LBracket, RBracket, Comma, Dot, Colon,
    Bang, Question, Tilde, Amp, Pipe, Arrow, Eq, Neq,
    True, False, LowerWord, UpperWord, End
};

struct Token {
    Tok kind;
    std::string text;
    int line = 1;
    int column = 1;
};

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) { advance(); }

    const Token& peek() const { return current_; }

    Token next() {
        Token t = current_;
        advance();
        return t;
    }

private:
    void advance() {
        skip_ws_and_comments();
        current_.line = line_;
        current_.column = column_;
        if (pos_ >= text_.size()) {
            current_.kind = Tok::End;
            current_.text.clear();
            return;
        }
        char c = text_[pos_];
        auto single = [&](Tok k) {
            current_.kind = k;
            current_.text = std::string(1, c);
            bump();
        };
        switch (c) {
            case '(': single(Tok::LParen); return;
            case ')': single(Tok::RParen); return;
            case '[': single(Tok::LBracket); return;
            case ']': single(Tok::RBracket); return;
            case ',': single(Tok::Comma); return;
            case '.': single(Tok::Dot); return;
            case ':': single(Tok::Colon); return;
            case '?': single(Tok::Question); return;
            case '~': single(Tok::Tilde); return;
            case '&': single(Tok::Amp); return;
            case '|': single(Tok::Pipe); return;
            case '!':
                bump();
                if (pos_ < text_.size() && text_[pos_] == '=') {
                    bump();
                    current_.kind = Tok::Neq;
                    current_.text = "!=";
                } else {
                    current_.kind = Tok::Bang;
                    current_.text = "!";
                }
                return;
            case '=':
                bump();
                if (pos_ < text_.size() && text_[pos_] == '>') {
                    bump();
                    current_.kind = Tok::Arrow;
                    current_.text = "=>";
                } else {
                    current_.kind = Tok::Eq;
                    current_.text = "=";
                }
                return;
            case '$': {
                std::string word = "$";
                bump();
                while (pos_ < text_.size() && is_word_char(text_[pos_])) {
                    word += text_[pos_];
                    bump();
                }
                if (word == "$true") current_.kind = Tok::True;
                else if (word == "$false") current_.kind = Tok::False;
                else throw ParseError(current_.line, current_.column, "$true or $false");
                current_.text = word;
                return;
            }
            default: break;
        }
        if (is_word_char(c)) {
            std::string word;
            while (pos_ < text_.size() && is_word_char(text_[pos_])) {
                word += text_[pos_];
                bump();
            }
            current_.kind = (word[0] >= 'A' && word[0] <= 'Z') ? Tok::UpperWord : Tok::LowerWord;
            current_.text = word;
            return;
        }
        throw ParseError(line_, column_, "a token (unexpected character '" + std::string(1, c) + "')");
    }

    static bool is_word_char(char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
    }

    void skip_ws_and_comments() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '%') {
                while (pos_ < text_.size() && text_[pos_] != '\n') bump();
            } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                bump();
            } else {
                break;
            }
        }
    }

    void bump() {
        if (text_[pos_] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        ++pos_;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int column_ = 1;
    Token current_;
};

// ---------------------------------------------------------------- parser

class Parser {
public:
    explicit Parser(std::string_view text) : lex_(text) {}

    std::vector<AnnotatedFormula> parse_file() {
        std::vector<AnnotatedFormula> out;
        while (lex_.peek().kind != Tok::End) out.push_back(parse_entry());
        return out;
    }

private:
    Token expect(Tok kind, const std::string& what) {
        if (lex_.peek().kind != kind)
            throw ParseError(lex_.peek().line, lex_.peek().column, what);
        return lex_.next();
    }

    AnnotatedFormula parse_entry() {
        Token head = expect(Tok::LowerWord, "'fof'");
        if (head.text != "fof") throw ParseError(head.line, head.column, "'fof'");
        expect(Tok::LParen, "'('");
        Token name = expect(Tok::LowerWord, "formula name");
        expect(Tok::Comma, "','");
        Token role = expect(Tok::LowerWord, "formula role");
        expect(Tok::Comma, "','");
        AnnotatedFormula out;
        out.name = name.text;
        if (role.text == "axiom") out.role = Role::Axiom;
        else if (role.text == "conjecture") out.role = Role::Conjecture;
        else throw UnsupportedRoleError(role.text);
        out.body = parse_formula();
        expect(Tok::RParen, "')'");
        expect(Tok::Dot, "'.'");
        return out;
    }

    FofPtr parse_formula() { return parse_impl(); }

    FofPtr parse_impl() {
        FofPtr lhs = parse_disj();
        if (lex_.peek().kind == Tok::Arrow) {
            lex_.next();
            FofPtr rhs = parse_impl();
            return make_node(FofNode::Kind::Implies, {lhs, rhs});
        }
        return lhs;
    }

    FofPtr parse_disj() {
        FofPtr lhs = parse_conj();
        while (lex_.peek().kind == Tok::Pipe) {
            lex_.next();
            FofPtr rhs = parse_conj();
            lhs = make_node(FofNode::Kind::Or, {lhs, rhs});
        }
        return lhs;
    }

    FofPtr parse_conj() {
        FofPtr lhs = parse_unary();
        while (lex_.peek().kind == Tok::Amp) {
            lex_.next();
            FofPtr rhs = parse_unary();
            lhs = make_node(FofNode::Kind::And, {lhs, rhs});
        }
        return lhs;
    }

    FofPtr parse_unary() {
        const Token& t = lex_.peek();
        switch (t.kind) {
            case Tok::Tilde: {
                lex_.next();
                return make_node(FofNode::Kind::Not, {parse_unary()});
            }
            case Tok::Bang:
            case Tok::Question: {
                Token q = lex_.next();
                expect(Tok::LBracket, "'['");
                std::vector<std::string> vars;
                vars.push_back(expect(Tok::UpperWord, "variable").text);
                while (lex_.peek().kind == Tok::Comma) {
                    lex_.next();
                    vars.push_back(expect(Tok::UpperWord, "variable").text);
                }
                expect(Tok::RBracket, "']'");
                expect(Tok::Colon, "':'");
                FofPtr body = parse_unary();
                auto kind = q.kind == Tok::Bang ? FofNode::Kind::Forall : FofNode::Kind::Exists;
                return make_node(kind, {body}, std::move(vars));
            }
            case Tok::LParen: {
                lex_.next();
                FofPtr inner = parse_formula();
                expect(Tok::RParen, "')'");
                return finish_equality(inner);
            }
            case Tok::True:
                lex_.next();
                return make_node(FofNode::Kind::True, {});
            case Tok::False:
                lex_.next();
                return make_node(FofNode::Kind::False, {});
            case Tok::UpperWord:
            case Tok::LowerWord:
                return parse_atom_or_equality();
            default:
                throw ParseError(t.line, t.column, "a formula");
        }
    }

    // "(A) = B" style never appears in the fixtures, but a parenthesized bare
    // term followed by =/!= is legal TPTP; only plain term nodes qualify.
    FofPtr finish_equality(FofPtr lhs) {
        Tok k = lex_.peek().kind;
        if (k != Tok::Eq && k != Tok::Neq) return lhs;
        if (lhs->kind != FofNode::Kind::Atom || !lhs->atom.args.empty())
            throw ParseError(lex_.peek().line, lex_.peek().column, "a formula (term before '=')");
        Token op = lex_.next();
        Term left = lhs->atom.predicate.empty()
                        ? Term::constant("")
                        : (formula::is_variable_name(lhs->atom.predicate)
                               ? Term::var(lhs->atom.predicate)
                               : Term::constant(lhs->atom.predicate));
        Term right = parse_term();
        Atom a;
        a.predicate = op.kind == Tok::Eq ? Signature::kEq : Signature::kNeq;
        a.args = {left, right};
        return make_atom(std::move(a));
    }

    Term parse_term() {
        const Token& t = lex_.peek();
        if (t.kind != Tok::UpperWord && t.kind != Tok::LowerWord)
            throw ParseError(t.line, t.column, "a term");
        Token word = lex_.next();
        if (lex_.peek().kind == Tok::LParen)
            throw FunctionSymbolsError(word.text);
        return word.kind == Tok::UpperWord ? Term::var(word.text) : Term::constant(word.text);
    }

    FofPtr parse_atom_or_equality() {
        Token word = lex_.next();
        if (word.kind == Tok::LowerWord && lex_.peek().kind == Tok::LParen) {
            // predicate application
            lex_.next();
            Atom a;
            a.predicate = word.text;
            a.args.push_back(parse_term());
            while (lex_.peek().kind == Tok::Comma) {
                lex_.next();
                a.args.push_back(parse_term());
            }
            expect(Tok::RParen, "')'");
            Tok k = lex_.peek().kind;
            if (k == Tok::Eq || k == Tok::Neq) throw FunctionSymbolsError(word.text);
            return make_atom(std::move(a));
        }
        Term lhs = word.kind == Tok::UpperWord ? Term::var(word.text) : Term::constant(word.text);
        Tok k = lex_.peek().kind;
        if (k == Tok::Eq || k == Tok::Neq) {
            Token op = lex_.next();
            Term rhs = parse_term();
            Atom a;
            a.predicate = op.kind == Tok::Eq ? Signature::kEq : Signature::kNeq;
            a.args = {lhs, rhs};
            return make_atom(std::move(a));
        }
        if (word.kind == Tok::UpperWord)
            throw ParseError(word.line, word.column, "a formula (bare variable)");
        // arity-0 predicate
        Atom a;
        a.predicate = word.text;
        return make_atom(std::move(a));
    }

    Lexer lex_;
};

} // namespace

std::vector<AnnotatedFormula> parse_tptp(std::string_view text) {
    Parser p(text);
    return p.parse_file();
}

// ---------------------------------------------------------------- coherentize

namespace {

bool occurs_free(const FofPtr& node, const std::string& var) {
    switch (node->kind) {
        case FofNode::Kind::Atom:
            for (const Term& t : node->atom.args)
                if (t.is_var() && t.name == var) return true;
            return false;
        case FofNode::Kind::Forall:
        case FofNode::Kind::Exists:
            if (std::find(node->vars.begin(), node->vars.end(), var) != node->vars.end())
                return false;
            return occurs_free(node->children[0], var);
        case FofNode::Kind::True:
        case FofNode::Kind::False:
            return false;
        default:
            for (const auto& c : node->children)
                if (occurs_free(c, var)) return true;
            return false;
    }
}

std::string complement_name(Signature& sig, const std::string& pred) {
    std::string candidate = "n" + pred;
    for (int i = 0;; ++i) {
        std::string name = i == 0 ? candidate : candidate + std::to_string(i);
        if (!sig.declared(name)) return name;
        auto comp = sig.complement_of(pred);
        if (comp && *comp == name) return name;
    }
}

Atom complement_atom(Signature& sig, const Atom& a) {
    Atom out = a;
    if (a.predicate == Signature::kEq) {
        out.predicate = Signature::kNeq;
        return out;
    }
    if (a.predicate == Signature::kNeq) {
        out.predicate = Signature::kEq;
        return out;
    }
    auto comp = sig.complement_of(a.predicate);
    if (!comp) {
        sig.declare(a.predicate, a.args.size());
        std::string bar = complement_name(sig, a.predicate);
        sig.declare(bar, a.args.size());
        sig.register_complement(a.predicate, bar);
        comp = bar;
    }
    out.predicate = *comp;
    return out;
}

// Negation normal form over {~, &, |, atoms, $true, $false}; quantifiers and
// implications below this level are outside the translated fragment.
FofPtr to_nnf(Signature& sig, const FofPtr& node, bool positive) {
    switch (node->kind) {
        case FofNode::Kind::Atom:
            return positive ? node : make_atom(complement_atom(sig, node->atom));
        case FofNode::Kind::True:
            return make_node(positive ? FofNode::Kind::True : FofNode::Kind::False, {});
        case FofNode::Kind::False:
            return make_node(positive ? FofNode::Kind::False : FofNode::Kind::True, {});
        case FofNode::Kind::Not:
            return to_nnf(sig, node->children[0], !positive);
        case FofNode::Kind::And:
        case FofNode::Kind::Or: {
            bool conj = (node->kind == FofNode::Kind::And) == positive;
            return make_node(conj ? FofNode::Kind::And : FofNode::Kind::Or,
                             {to_nnf(sig, node->children[0], positive),
                              to_nnf(sig, node->children[1], positive)});
        }
        case FofNode::Kind::Implies:
            throw NotCoherentError("nested implication");
        case FofNode::Kind::Forall:
        case FofNode::Kind::Exists:
            if (!positive) throw NotCoherentError("negation over a quantifier");
            throw NotCoherentError("quantifier below a connective");
    }
    throw NotCoherentError("unreachable");
}

void flatten_conjunction(const FofPtr& node, std::vector<Atom>& out) {
    switch (node->kind) {
        case FofNode::Kind::And:
            flatten_conjunction(node->children[0], out);
            flatten_conjunction(node->children[1], out);
            return;
        case FofNode::Kind::Atom:
            out.push_back(node->atom);
            return;
        case FofNode::Kind::True:
            return;
        case FofNode::Kind::Or:
            throw NotCoherentError("disjunction in premise");
        case FofNode::Kind::False:
            throw NotCoherentError("falsum in premise");
        default:
            throw NotCoherentError("premise is not a conjunction of atoms");
    }
}

std::vector<Conjunction> to_dnf(const FofPtr& node) {
    switch (node->kind) {
        case FofNode::Kind::Atom:
            return {Conjunction{{node->atom}}};
        case FofNode::Kind::True:
            return {Conjunction{}};
        case FofNode::Kind::False:
            return {};
        case FofNode::Kind::Or: {
            auto left = to_dnf(node->children[0]);
            auto right = to_dnf(node->children[1]);
            left.insert(left.end(), right.begin(), right.end());
            return left;
        }
        case FofNode::Kind::And: {
            auto left = to_dnf(node->children[0]);
            auto right = to_dnf(node->children[1]);
            std::vector<Conjunction> out;
            for (const auto& l : left)
                for (const auto& r : right) {
                    Conjunction c = l;
                    c.atoms.insert(c.atoms.end(), r.atoms.begin(), r.atoms.end());
                    out.push_back(std::move(c));
                }
            return out;
        }
        default:
            throw NotCoherentError("conclusion is not built from atoms, & and |");
    }
}

void declare_atoms(Signature& sig, const CoherentFormula& f) {
    auto declare = [&sig](const Atom& a) { sig.declare(a.predicate, a.args.size()); };
    for (const Atom& a : f.premises) declare(a);
    for (const Conjunction& d : f.disjuncts)
        for (const Atom& a : d.atoms) declare(a);
}

} // namespace

std::vector<CoherentFormula> coherentize(const AnnotatedFormula& f, Signature& sig) {
    CoherentFormula out;
    out.name = f.name;

    FofPtr node = f.body;
    while (node->kind == FofNode::Kind::Forall) {
        out.universals.insert(out.universals.end(), node->vars.begin(), node->vars.end());
        node = node->children[0];
    }
    // Existentials between the universal prefix and the implication: the
    // mis-scoped TPTP idiom; hoisted into the conclusion below.
    std::vector<std::string> hoisted;
    while (node->kind == FofNode::Kind::Exists) {
        hoisted.insert(hoisted.end(), node->vars.begin(), node->vars.end());
        node = node->children[0];
    }

    FofPtr premise_tree;
    FofPtr conclusion_tree;
    if (node->kind == FofNode::Kind::Implies) {
        premise_tree = node->children[0];
        conclusion_tree = node->children[1];
        for (const std::string& v : hoisted)
            if (occurs_free(premise_tree, v))
                throw NotCoherentError("hoisted existential " + v + " occurs in the premise");
    } else {
        premise_tree = make_node(FofNode::Kind::True, {});
        conclusion_tree = node;
    }

    out.existentials = hoisted;
    while (conclusion_tree->kind == FofNode::Kind::Exists) {
        out.existentials.insert(out.existentials.end(), conclusion_tree->vars.begin(),
                                conclusion_tree->vars.end());
        conclusion_tree = conclusion_tree->children[0];
    }

    FofPtr premise_nnf = to_nnf(sig, premise_tree, true);
    FofPtr conclusion_nnf = to_nnf(sig, conclusion_tree, true);
    flatten_conjunction(premise_nnf, out.premises);
    out.disjuncts = to_dnf(conclusion_nnf);

    // ⊤ is representable only as the sole disjunct.
    if (out.disjuncts.size() > 1)
        for (const Conjunction& d : out.disjuncts)
            if (d.atoms.empty()) throw NotCoherentError("verum inside a disjunction");

    declare_atoms(sig, out);
    formula::validate(out);
    return {out};
}

// ------------------------------------------------- support axiom generation

namespace {

std::vector<std::string> argument_variables(std::size_t arity) {
    assert(arity < 20);
    std::vector<std::string> vars;
    for (std::size_t i = 0; i < arity; ++i) vars.push_back(std::string(1, char('A' + i)));
    return vars;
}

Atom predicate_atom(const std::string& pred, const std::vector<std::string>& vars) {
    Atom a;
    a.predicate = pred;
    for (const auto& v : vars) a.args.push_back(Term::var(v));
    return a;
}

} // namespace

std::vector<CoherentFormula> generate_support_axioms(const Signature& sig,
                                                     const SupportAxiomOptions& opts) {
    for (const auto& p : opts.excluded_middle_for)
        if (!sig.declared(p)) throw UnknownPredicateError(p);

    std::vector<CoherentFormula> out;

    auto eq_atom = [](const std::string& a, const std::string& b) {
        return Atom{Signature::kEq, {Term::var(a), Term::var(b)}};
    };
    auto neq_atom = [](const std::string& a, const std::string& b) {
        return Atom{Signature::kNeq, {Term::var(a), Term::var(b)}};
    };

    {
        CoherentFormula refl;
        refl.name = "eq_reflexive";
        refl.universals = {"A"};
        refl.disjuncts = {Conjunction{{eq_atom("A", "A")}}};
        out.push_back(refl);

        CoherentFormula sym;
        sym.name = "eq_symmetric";
        sym.universals = {"A", "B"};
        sym.premises = {eq_atom("A", "B")};
        sym.disjuncts = {Conjunction{{eq_atom("B", "A")}}};
        out.push_back(sym);

        if (opts.symmetry_for_neq) {
            CoherentFormula nsym;
            nsym.name = "neq_symmetric";
            nsym.universals = {"A", "B"};
            nsym.premises = {neq_atom("A", "B")};
            nsym.disjuncts = {Conjunction{{neq_atom("B", "A")}}};
            out.push_back(nsym);
        }
    }

    // R(x) ∧ R̄(x) ⇒ ⊥, one per complement pair, keyed by the base predicate.
    for (const auto& [base, bar] : sig.complements) {
        std::size_t arity = sig.arity(base);
        auto vars = argument_variables(arity);
        CoherentFormula contra;
        contra.name = base + "_neg_contradiction";
        contra.universals = vars;
        contra.premises = {predicate_atom(base, vars), predicate_atom(bar, vars)};
        out.push_back(contra);
    }

    if (opts.substitution_axioms) {
        for (const auto& [pred, arity] : sig.predicates) {
            if (pred == Signature::kEq || pred == Signature::kNeq) continue;
            auto vars = argument_variables(arity);
            for (std::size_t i = 0; i < arity; ++i) {
                CoherentFormula sub;
                sub.name = pred + "_eqsub_" + std::to_string(i + 1);
                sub.universals = vars;
                sub.universals.push_back("X");
                auto swapped = vars;
                swapped[i] = "X";
                sub.premises = {predicate_atom(pred, vars), eq_atom(vars[i], "X")};
                sub.disjuncts = {Conjunction{{predicate_atom(pred, swapped)}}};
                out.push_back(sub);
            }
        }
    }

    // Excluded middle axioms last: the prover deprioritizes case splits.
    for (const auto& pred : opts.excluded_middle_for) {
        auto bar = sig.complement_of(pred);
        if (!bar) throw UnknownPredicateError(pred + " (no complement registered)");
        std::size_t arity = sig.arity(pred);
        auto vars = argument_variables(arity);
        CoherentFormula em;
        em.name = pred + "_excluded_middle";
        em.universals = vars;
        em.disjuncts = {Conjunction{{predicate_atom(pred, vars)}},
                        Conjunction{{predicate_atom(*bar, vars)}}};
        out.push_back(em);
    }

    for (const auto& f : out) formula::validate(f);
    return out;
}

// ---------------------------------------------------------------- emission

namespace {

std::string atom_to_tptp(const Atom& a) {
    if (a.predicate == Signature::kEq) return "(" + a.args[0].name + " = " + a.args[1].name + ")";
    if (a.predicate == Signature::kNeq) return "(" + a.args[0].name + " != " + a.args[1].name + ")";
    std::string out = a.predicate;
    if (!a.args.empty()) {
        out += "(";
        for (std::size_t i = 0; i < a.args.size(); ++i) {
            if (i) out += ",";
            out += a.args[i].name;
        }
        out += ")";
    }
    return out;
}

std::string join_vars(const std::vector<std::string>& vars) {
    std::string out;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (i) out += ",";
        out += vars[i];
    }
    return out;
}

} // namespace

std::string to_tptp(const CoherentFormula& f, const std::string& role) {
    std::string body;

    std::string conclusion;
    if (f.disjuncts.empty()) {
        conclusion = "$false";
    } else {
        for (std::size_t i = 0; i < f.disjuncts.size(); ++i) {
            if (i) conclusion += " | ";
            const auto& atoms = f.disjuncts[i].atoms;
            if (atoms.empty()) {
                conclusion += "$true";
                continue;
            }
            std::string conj;
            for (std::size_t j = 0; j < atoms.size(); ++j) {
                if (j) conj += " & ";
                conj += atom_to_tptp(atoms[j]);
            }
            conclusion += atoms.size() > 1 && f.disjuncts.size() > 1 ? "(" + conj + ")" : conj;
        }
    }
    if (!f.existentials.empty())
        conclusion = "? [" + join_vars(f.existentials) + "] : (" + conclusion + ")";

    if (f.premises.empty()) {
        body = conclusion;
    } else {
        std::string prem;
        for (std::size_t i = 0; i < f.premises.size(); ++i) {
            if (i) prem += " & ";
            prem += atom_to_tptp(f.premises[i]);
        }
        body = "(" + prem + ") => (" + conclusion + ")";
    }
    if (!f.universals.empty())
        body = "! [" + join_vars(f.universals) + "] : (" + body + ")";

    return "fof(" + f.name + ", " + role + ", (" + body + ")).";
}

// ---------------------------------------------------------------- evaluation

bool eval_fof(const FofPtr& node, const FiniteInterpretation& interp,
              std::map<std::string, int>& env) {
    switch (node->kind) {
        case FofNode::Kind::True:
            return true;
        case FofNode::Kind::False:
            return false;
        case FofNode::Kind::Not:
            return !eval_fof(node->children[0], interp, env);
        case FofNode::Kind::And:
            return eval_fof(node->children[0], interp, env) &&
                   eval_fof(node->children[1], interp, env);
        case FofNode::Kind::Or:
            return eval_fof(node->children[0], interp, env) ||
                   eval_fof(node->children[1], interp, env);
        case FofNode::Kind::Implies:
            return !eval_fof(node->children[0], interp, env) ||
                   eval_fof(node->children[1], interp, env);
        case FofNode::Kind::Atom: {
            Atom ground = node->atom;
            for (Term& t : ground.args) {
                if (!t.is_var()) continue;
                auto it = env.find(t.name);
                if (it == env.end()) throw UnboundVariableError(t.name);
                t = Term::constant(std::to_string(it->second));
            }
            return interp.atom_true(ground);
        }
        case FofNode::Kind::Forall:
        case FofNode::Kind::Exists: {
            bool forall = node->kind == FofNode::Kind::Forall;
            // iterate assignments for node->vars
            std::vector<int> assign(node->vars.size(), 0);
            while (true) {
                for (std::size_t i = 0; i < node->vars.size(); ++i) env[node->vars[i]] = assign[i];
                bool v = eval_fof(node->children[0], interp, env);
                if (forall && !v) {
                    for (const auto& var : node->vars) env.erase(var);
                    return false;
                }
                if (!forall && v) {
                    for (const auto& var : node->vars) env.erase(var);
                    return true;
                }
                std::size_t k = 0;
                while (k < assign.size()) {
                    if (++assign[k] < interp.domain_size) break;
                    assign[k] = 0;
                    ++k;
                }
                if (k == assign.size()) break;
            }
            for (const auto& var : node->vars) env.erase(var);
            return forall;
        }
    }
    return false;
}

} // namespace geoproof::tptp

#ifndef GEOPROOF_ERROR_HPP
#define GEOPROOF_ERROR_HPP

#include <stdexcept>
#include <string>

namespace geoproof {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// formula
class UnboundVariableError : public Error {
public:
    explicit UnboundVariableError(const std::string& var)
        : Error("unbound variable: " + var), variable(var) {}
    std::string variable;
};

// tptp
class ParseError : public Error {
public:
    ParseError(int line, int column, const std::string& expected)
        : Error("parse error at " + std::to_string(line) + ":" + std::to_string(column) +
                ": expected " + expected),
          line(line), column(column), expected(expected) {}
    int line;
    int column;
    std::string expected;
};

class UnsupportedRoleError : public Error {
public:
    explicit UnsupportedRoleError(const std::string& role)
        : Error("unsupported formula role: " + role), role(role) {}
    std::string role;
};

class FunctionSymbolsError : public Error {
public:
    explicit FunctionSymbolsError(const std::string& symbol)
        : Error("function symbols of arity > 0 are unsupported: " + symbol), symbol(symbol) {}
    std::string symbol;
};

class NotCoherentError : public Error {
public:
    explicit NotCoherentError(const std::string& reason)
        : Error("formula is not coherent: " + reason), reason(reason) {}
    std::string reason;
};

class UnknownPredicateError : public Error {
public:
    explicit UnknownPredicateError(const std::string& name)
        : Error("unknown predicate: " + name), predicate(name) {}
    std::string predicate;
};

// interp / geometry
class DegenerateInputError : public Error {
public:
    explicit DegenerateInputError(const std::string& what_input)
        : Error("degenerate input: " + what_input) {}
};

class NoIntersectionError : public Error {
public:
    explicit NoIntersectionError(const std::string& detail)
        : Error("no intersection: " + detail) {}
};

class ConcentricCoincidentError : public Error {
public:
    ConcentricCoincidentError() : Error("circles are concentric and coincident") {}
};

class MissingInterpretationError : public Error {
public:
    explicit MissingInterpretationError(const std::string& axiom)
        : Error("no visual interpretation registered for axiom: " + axiom), axiom(axiom) {}
    std::string axiom;
};

class DegenerateModelError : public Error {
public:
    explicit DegenerateModelError(const std::string& condition)
        : Error("degenerate premise model: " + condition), condition(condition) {}
    std::string condition;
};

// gcl
class GclParseError : public Error {
public:
    GclParseError(int line, const std::string& detail)
        : Error("gcl parse error at line " + std::to_string(line) + ": " + detail), line(line) {}
    int line;
};

class UnknownCommandError : public Error {
public:
    explicit UnknownCommandError(const std::string& command)
        : Error("unknown gcl command: " + command), command(command) {}
    std::string command;
};

class IncludeCycleError : public Error {
public:
    explicit IncludeCycleError(const std::string& file)
        : Error("include cycle through: " + file), file(file) {}
    std::string file;
};

class UndefinedNameError : public Error {
public:
    explicit UndefinedNameError(const std::string& name)
        : Error("undefined name: " + name), name(name) {}
    std::string name;
};

// illustrate
class AmbiguousBranchError : public Error {
public:
    explicit AmbiguousBranchError(const std::string& detail)
        : Error("ambiguous branch selection: " + detail) {}
};

class AllContradictoryError : public Error {
public:
    explicit AllContradictoryError(const std::string& detail)
        : Error("all branches contradictory, nothing to illustrate: " + detail) {}
};

} // namespace geoproof

#endif

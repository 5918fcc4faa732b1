#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mcl {

// Base class for all errors raised by the reasoner.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Lexical or grammatical problem in a knowledge-base file or query string.
struct ParseError : Error {
    ParseError(int line, int column, const std::string& message)
        : Error("parse error at " + std::to_string(line) + ":" + std::to_string(column) + ": " + message),
          line(line),
          column(column) {}
    int line;
    int column;
};

// The tableau hit its node budget. Raised instead of guessing an answer.
struct ResourceLimitError : Error {
    explicit ResourceLimitError(std::uint64_t limit)
        : Error("tableau node limit of " + std::to_string(limit) + " exceeded"), limit(limit) {}
    std::uint64_t limit;
};

// Too many independent signature atoms to enumerate a canonical domain.
struct AtomCapError : Error {
    AtomCapError(std::size_t atoms, std::size_t cap)
        : Error("signature has " + std::to_string(atoms) + " independent atoms, above the configured cap of " +
                std::to_string(cap)),
          atoms(atoms),
          cap(cap) {}
    std::size_t atoms;
    std::size_t cap;
};

struct UnknownModuleError : Error {
    explicit UnknownModuleError(const std::string& name) : Error("unknown module: " + name), name(name) {}
    std::string name;
};

// The strict axioms plus assertions have no classical model; defeasible
// reasoning is undefined in that case.
struct InconsistentKbError : Error {
    InconsistentKbError() : Error("knowledge base is classically inconsistent") {}
};

// A concept was evaluated against a signature that does not contain one of
// its quantified subconcepts; the session must be rebuilt with the query.
struct UnknownSubconceptError : Error {
    explicit UnknownSubconceptError(const std::string& concept_text)
        : Error("concept '" + concept_text + "' is not covered by the current signature; rebuild the session with the query included") {}
};

// Query shape does not match the requested entailment mode.
struct BadQueryError : Error {
    explicit BadQueryError(const std::string& message) : Error(message) {}
};

}  // namespace mcl

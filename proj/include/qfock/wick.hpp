// Copyright 2026 The qfock Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file wick.hpp
 * @brief Symbolic normal ordering of ladder-operator strings.
 *
 * Text grammar (whitespace separated):
 *
 *     expr  := prefix atom*
 *     prefix:= "bose:" | "fermi:"
 *     atom  := "a(" label ")" | "a+(" label ")"
 *     label := [A-Za-z0-9_'.]+
 *
 * Labels are abstract tokens. Two symbols with the same label always act on
 * the same mode; distinct labels may or may not. Kronecker deltas between
 * labels are kept symbolic until evaluate() substitutes concrete indices.
 */

#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qfock/fock.hpp"

namespace qfock::wick {

enum class Kind { Create, Annihilate };

struct LadderSymbol {
    Kind kind;
    std::string label;

    auto operator<=>(const LadderSymbol&) const = default;
};

using SymbolString = std::vector<LadderSymbol>;

struct OperatorString {
    Statistics statistics = Statistics::Bose;
    SymbolString symbols;

    bool operator==(const OperatorString&) const = default;
};

/// Kronecker delta between two labels, stored with first <= second.
struct Delta {
    std::string first;
    std::string second;

    Delta(std::string a, std::string b);
    auto operator<=>(const Delta&) const = default;
};

using DeltaSet = std::set<Delta>;

struct Term {
    int coefficient = 1;
    DeltaSet deltas;
    SymbolString ops;  ///< all Create symbols precede all Annihilate symbols

    bool operator==(const Term&) const = default;
};

struct NormalForm {
    Statistics statistics = Statistics::Bose;
    std::vector<Term> terms;  ///< canonical order: by ops, then by deltas

    bool operator==(const NormalForm&) const = default;
};

struct DeltaMonomial {
    int coefficient = 1;
    DeltaSet deltas;

    bool operator==(const DeltaMonomial&) const = default;
};

struct DeltaPolynomial {
    std::vector<DeltaMonomial> terms;
    std::set<std::string> labels;  ///< every label of the source string

    bool is_zero() const { return terms.empty(); }
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t position);
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

OperatorString parse(std::string_view text);

std::string to_string(const LadderSymbol& s);
std::string to_string(const SymbolString& s);
std::string to_string(const OperatorString& s);
std::string to_string(const Delta& d);
std::string to_string(const NormalForm& nf);
std::string to_string(const DeltaPolynomial& p);

NormalForm normal_order(const OperatorString& s);

/// Coefficient sum of the identity terms of normal_order(s).
DeltaPolynomial vacuum_expectation(const OperatorString& s);

/// Throws std::invalid_argument if a label of p is not assigned.
Real evaluate(const DeltaPolynomial& p, const std::map<std::string, std::size_t>& assignment);

bool is_normal(const SymbolString& s);

}  // namespace qfock::wick

// Copyright 2026 The qfock Authors
// SPDX-License-Identifier: Apache-2.0

#include "qfock/wick.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>

namespace qfock::wick {

Delta::Delta(std::string a, std::string b) : first(std::move(a)), second(std::move(b)) {
    if (second < first) std::swap(first, second);
}

ParseError::ParseError(const std::string& message, std::size_t position)
    : std::runtime_error("parse error at " + std::to_string(position) + ": " + message), position_(position) {}

namespace {

bool is_label_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == '.';
}

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

}  // namespace

OperatorString parse(std::string_view text) {
    OperatorString out;
    std::size_t pos = 0;
    while (pos < text.size() && is_space(text[pos])) ++pos;

    const auto colon = text.find(':', pos);
    if (colon == std::string_view::npos) throw ParseError("missing statistics prefix (bose: or fermi:)", pos);
    const std::string_view prefix = text.substr(pos, colon - pos);
    if (prefix == "bose")
        out.statistics = Statistics::Bose;
    else if (prefix == "fermi")
        out.statistics = Statistics::Fermi;
    else
        throw ParseError("unknown statistics prefix '" + std::string(prefix) + "'", pos);
    pos = colon + 1;

    while (true) {
        while (pos < text.size() && is_space(text[pos])) ++pos;
        if (pos == text.size()) break;

        const std::size_t start = pos;
        if (text[pos] != 'a') throw ParseError("expected 'a(' or 'a+('", start);
        ++pos;
        Kind kind = Kind::Annihilate;
        if (pos < text.size() && text[pos] == '+') {
            kind = Kind::Create;
            ++pos;
        }
        if (pos >= text.size() || text[pos] != '(') throw ParseError("expected '(' after operator name", pos);
        ++pos;
        const std::size_t label_start = pos;
        while (pos < text.size() && is_label_char(text[pos])) ++pos;
        if (pos == label_start) {
            if (pos < text.size() && text[pos] == ')') throw ParseError("empty label", label_start);
            throw ParseError("invalid label", label_start);
        }
        if (pos >= text.size() || text[pos] != ')') throw ParseError("unclosed atom", start);
        out.symbols.push_back({kind, std::string(text.substr(label_start, pos - label_start))});
        ++pos;
        if (pos < text.size() && !is_space(text[pos])) throw ParseError("atoms must be separated by whitespace", pos);
    }
    return out;
}

std::string to_string(const LadderSymbol& s) {
    return (s.kind == Kind::Create ? "a+(" : "a(") + s.label + ")";
}

std::string to_string(const SymbolString& s) {
    std::string out;
    for (const auto& sym : s) {
        if (!out.empty()) out += ' ';
        out += to_string(sym);
    }
    return out;
}

std::string to_string(const OperatorString& s) {
    std::string out = std::string(qfock::to_string(s.statistics)) + ":";
    if (!s.symbols.empty()) out += " " + to_string(s.symbols);
    return out;
}

std::string to_string(const Delta& d) { return "d(" + d.first + "," + d.second + ")"; }

namespace {

std::string format_product(int coefficient, const DeltaSet& deltas, const SymbolString& ops, bool leading) {
    std::vector<std::string> factors;
    const int magnitude = std::abs(coefficient);
    if (magnitude != 1 || (deltas.empty() && ops.empty())) factors.push_back(std::to_string(magnitude));
    for (const auto& d : deltas) factors.push_back(to_string(d));
    if (!ops.empty()) factors.push_back(to_string(ops));

    std::string body;
    for (const auto& f : factors) {
        if (!body.empty()) body += ' ';
        body += f;
    }
    if (leading) return (coefficient < 0 ? "-" : "") + body;
    return (coefficient < 0 ? " - " : " + ") + body;
}

}  // namespace

std::string to_string(const NormalForm& nf) {
    if (nf.terms.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < nf.terms.size(); ++i)
        out += format_product(nf.terms[i].coefficient, nf.terms[i].deltas, nf.terms[i].ops, i == 0);
    return out;
}

std::string to_string(const DeltaPolynomial& p) {
    if (p.terms.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < p.terms.size(); ++i)
        out += format_product(p.terms[i].coefficient, p.terms[i].deltas, {}, i == 0);
    return out;
}

bool is_normal(const SymbolString& s) {
    bool seen_annihilate = false;
    for (const auto& sym : s) {
        if (sym.kind == Kind::Annihilate) seen_annihilate = true;
        else if (seen_annihilate) return false;
    }
    return true;
}

namespace {

// Sorts [first, last) by label with the exchange sign of the statistics.
// Returns 0 when a fermionic block contains a repeated label.
int sort_block(SymbolString& ops, std::size_t first, std::size_t last, bool fermi) {
    int sign = 1;
    for (std::size_t i = first + 1; i < last; ++i) {
        for (std::size_t j = i; j > first && ops[j].label < ops[j - 1].label; --j) {
            std::swap(ops[j], ops[j - 1]);
            if (fermi) sign = -sign;
        }
    }
    if (fermi)
        for (std::size_t i = first + 1; i < last; ++i)
            if (ops[i].label == ops[i - 1].label) return 0;
    return sign;
}

}  // namespace

NormalForm normal_order(const OperatorString& s) {
    const bool fermi = s.statistics == Statistics::Fermi;
    const int exchange = fermi ? -1 : 1;

    std::vector<Term> pending{Term{1, {}, s.symbols}};
    std::map<std::pair<SymbolString, DeltaSet>, int> collected;

    while (!pending.empty()) {
        Term t = std::move(pending.back());
        pending.pop_back();

        std::size_t i = 0;
        while (i + 1 < t.ops.size() && !(t.ops[i].kind == Kind::Annihilate && t.ops[i + 1].kind == Kind::Create)) ++i;

        if (i + 1 >= t.ops.size()) {
            const auto creators = static_cast<std::size_t>(
                std::count_if(t.ops.begin(), t.ops.end(), [](const LadderSymbol& x) { return x.kind == Kind::Create; }));
            int sign = sort_block(t.ops, 0, creators, fermi);
            sign *= sort_block(t.ops, creators, t.ops.size(), fermi);
            if (sign == 0) continue;
            collected[{std::move(t.ops), std::move(t.deltas)}] += sign * t.coefficient;
            continue;
        }

        // A_i A^dag_j = delta_ij +/- A^dag_j A_i
        Term swapped = t;
        std::swap(swapped.ops[i], swapped.ops[i + 1]);
        swapped.coefficient *= exchange;

        Term contracted = std::move(t);
        const auto& a = contracted.ops[i].label;
        const auto& b = contracted.ops[i + 1].label;
        if (a != b) contracted.deltas.emplace(a, b);
        contracted.ops.erase(contracted.ops.begin() + static_cast<std::ptrdiff_t>(i),
                             contracted.ops.begin() + static_cast<std::ptrdiff_t>(i + 2));

        pending.push_back(std::move(swapped));
        pending.push_back(std::move(contracted));
    }

    NormalForm nf{s.statistics, {}};
    for (auto& [key, coefficient] : collected)
        if (coefficient != 0) nf.terms.push_back(Term{coefficient, key.second, key.first});
    return nf;
}

DeltaPolynomial vacuum_expectation(const OperatorString& s) {
    DeltaPolynomial p;
    for (const auto& sym : s.symbols) p.labels.insert(sym.label);
    for (const auto& t : normal_order(s).terms)
        if (t.ops.empty()) p.terms.push_back({t.coefficient, t.deltas});
    return p;
}

Real evaluate(const DeltaPolynomial& p, const std::map<std::string, std::size_t>& assignment) {
    for (const auto& label : p.labels)
        if (!assignment.contains(label)) throw std::invalid_argument("evaluate: label '" + label + "' is not assigned");
    Real sum = 0;
    for (const auto& m : p.terms) {
        bool all = true;
        for (const auto& d : m.deltas) {
            auto a = assignment.find(d.first);
            auto b = assignment.find(d.second);
            if (a == assignment.end() || b == assignment.end())
                throw std::invalid_argument("evaluate: delta label is not assigned");
            if (a->second != b->second) {
                all = false;
                break;
            }
        }
        if (all) sum += m.coefficient;
    }
    return sum;
}

}  // namespace qfock::wick

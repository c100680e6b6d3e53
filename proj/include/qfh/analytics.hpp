#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "qfh/qhash.hpp"
#include "qfh/word.hpp"

namespace qfh {

struct Resources {
    int qubits = 0;
    int queries = 0;
};

// qubits = log2(n) + s + 2, queries = t.
Resources resource_report(std::uint64_t n, int s, int t);

struct BoundClause {
    bool applicable = true;
    bool advisory = false;  // epsilon only sampled, failure is a warning
    bool pass = false;
    double lhs = 0.0;
    double rhs = 0.0;
    std::string note;

    bool ok() const { return !applicable || advisory || pass; }
};

struct BoundVerdict {
    BoundClause success_bound;  // pr >= a / (1 + (n-1) eps^2)
    BoundClause query_budget;   // t <= ceil(pi/4 sqrt(n)) + 1
    BoundClause qubit_budget;   // q <= 2 log2(n) + log2(m) + 8

    bool all_ok() const { return success_bound.ok() && query_budget.ok() && qubit_budget.ok(); }
};

// Everything one search run produces, exact quantities plus shot statistics.
struct RunReport {
    std::uint64_t n = 0;
    int m = 0;
    int l = 0;
    int s = 0;
    double epsilon = 1.0;
    bool epsilon_exact = false;
    std::vector<int> d_profile;  // codeword distance to the query per slot, -1 if unavailable

    double p_good = 0.0;
    double theta = 0.0;
    int t = 0;
    double a = 0.0;  // sin^2((2t+1) theta), good mass after amplification
    double pr_success_exact = 0.0;
    double bound_lower = 0.0;

    int qubits = 0;
    int queries = 0;

    int shots = 0;
    std::map<std::uint64_t, int> histogram;  // full measured basis index -> count
    int found = 0;
    int not_found = 0;
    int hash_nonzero = 0;
    std::vector<std::uint64_t> matches;

    std::uint64_t seed = 0;
    std::string policy;
    std::string status;  // found | not-found | hash-nonzero
    bool amplification_refused = false;
    std::vector<std::string> notes;

    BoundVerdict checks;
};

// Ground truth: indices j with V[j] == w, by linear scan.
std::vector<std::uint64_t> classical_search(std::span<const Word> dictionary, const Word& w);

// Success, query and memory clauses for one report. The success clause is
// skipped when the query missed and downgraded to advisory when epsilon is
// only a sampled estimate.
BoundVerdict check_success_bound(const RunReport& report);

struct WidthCheck {
    bool applicable = true;
    double bound = 0.0;
    int width = 0;
    bool pass = false;
    std::string note;
};

// Hash-width lower bound check for explicit parameters...
WidthCheck check_min_width(int m, double epsilon, int width_qubits);
// ...and for a shipped hash instance (block width against its own spec).
WidthCheck check_min_width(const QuantumHash& hash);

}  // namespace qfh

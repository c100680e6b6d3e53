#include "qfh/analytics.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qfh {

namespace {

int exact_log2(std::uint64_t n) {
    if (n == 0 || (n & (n - 1)) != 0) throw std::invalid_argument("value must be a power of two");
    return std::countr_zero(n);
}

}  // namespace

Resources resource_report(std::uint64_t n, int s, int t) {
    if (t < 0) throw std::invalid_argument("iteration count must be non-negative");
    return Resources{exact_log2(n) + s + 2, t};
}

std::vector<std::uint64_t> classical_search(std::span<const Word> dictionary, const Word& w) {
    std::vector<std::uint64_t> hits;
    for (std::size_t j = 0; j < dictionary.size(); ++j)
        if (dictionary[j] == w) hits.push_back(j);
    return hits;
}

BoundVerdict check_success_bound(const RunReport& report) {
    BoundVerdict verdict;
    const double n = static_cast<double>(report.n);

    auto& success = verdict.success_bound;
    if (report.matches.empty()) {
        success.applicable = false;
        success.note = "query not in dictionary; success bound skipped, p_good recorded";
        success.lhs = report.p_good;
    } else if (report.amplification_refused) {
        success.applicable = false;
        success.note = "amplification refused; success bound skipped";
    } else {
        success.advisory = !report.epsilon_exact;
        if (success.advisory) success.note = "epsilon is a sampled estimate; treat as a warning only";
        success.lhs = report.pr_success_exact;
        success.rhs = report.a / (1.0 + (n - 1.0) * report.epsilon * report.epsilon);
        success.pass = success.lhs >= success.rhs - 1e-9;
    }

    auto& queries = verdict.query_budget;
    queries.lhs = report.queries;
    queries.rhs = std::ceil(std::numbers::pi / 4.0 * std::sqrt(n)) + 1.0;
    queries.pass = queries.lhs <= queries.rhs;

    auto& qubits = verdict.qubit_budget;
    qubits.lhs = report.qubits;
    qubits.rhs = 2.0 * std::log2(n) + std::log2(static_cast<double>(report.m)) + 8.0;
    qubits.pass = report.qubits == exact_log2(report.n) + report.s + 2 && qubits.lhs <= qubits.rhs;
    if (!qubits.pass) qubits.note = "allocated registers exceed the memory budget";

    return verdict;
}

WidthCheck check_min_width(int m, double epsilon, int width_qubits) {
    WidthCheck check;
    check.width = width_qubits;
    if (m < 2) {
        check.applicable = false;
        check.pass = true;
        check.note = "width bound needs m >= 2";
        return check;
    }
    if (epsilon >= 1.0) {
        check.applicable = false;
        check.pass = true;
        check.note = "epsilon = 1 carries no constraint; bound skipped";
        return check;
    }
    check.bound = min_qubits_bound(m, epsilon);
    check.pass = static_cast<double>(width_qubits) >= check.bound;
    return check;
}

WidthCheck check_min_width(const QuantumHash& hash) {
    WidthCheck check = check_min_width(hash.spec().m, hash.spec().epsilon, hash.block_width());
    if (check.applicable && !hash.spec().epsilon_exact)
        check.note = "epsilon is a sampled estimate; verdict is advisory";
    return check;
}

}  // namespace qfh

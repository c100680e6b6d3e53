#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "qfh/analytics.hpp"
#include "qfh/qhash.hpp"
#include "qfh/qstate.hpp"

namespace qfh {

struct IterationPolicy {
    enum class Kind { Exact, Blind, Fixed };
    Kind kind = Kind::Exact;
    int fixed_t = 0;

    static IterationPolicy exact() { return {Kind::Exact, 0}; }
    static IterationPolicy blind() { return {Kind::Blind, 0}; }
    static IterationPolicy fixed(int t) { return {Kind::Fixed, t}; }
};

std::string policy_name(const IterationPolicy& policy);

struct SearchInstance {
    std::vector<Word> dictionary;  // size must be a power of two
    Word query;
    std::shared_ptr<const QuantumHash> hash;
    IterationPolicy policy = IterationPolicy::exact();
    std::uint64_t seed = 0;
    int shots = 0;
};

enum class OutcomeStatus { Found, NotFound, HashNonzero };

struct SearchOutcome {
    std::uint64_t measured_index = 0;
    bool hash_block_zero = false;
    bool verified = false;
    OutcomeStatus status = OutcomeStatus::NotFound;
};

struct AmplifiedState {
    StateVector psi;  // conversion output, the reflection axis
    double theta = 0.0;
    int t = 0;
    StateVector final;
};

struct MeasureResult {
    std::vector<SearchOutcome> outcomes;
    std::map<std::uint64_t, int> histogram;
    int found = 0;
    int not_found = 0;
    int hash_nonzero = 0;
};

RegisterLayout layout_for(std::uint64_t n, const QuantumHash& hash);

// (1/sqrt(n)) sum_j |j> (x) hash(V[j]) (x) |1>.
StateVector build_dictionary_state(std::span<const Word> dictionary, const QuantumHash& hash,
                                   const RegisterLayout& layout);

// Inverse hash transform for the query on every block; matching blocks
// collapse onto |0...0>.
void apply_conversion(StateVector& state, const Word& query, const QuantumHash& hash,
                      const RegisterLayout& layout);

double good_probability(const StateVector& state, const RegisterLayout& layout);

// Exact: t = round(pi / (4 asin(sqrt(p_good))) - 1/2), at least 0; throws
// when p_good = 0 since no rotation can reach the target. Blind:
// floor(pi/4 sqrt(n)). Fixed: as given. All results are clamped to
// ceil(pi/4 sqrt(n) * 2).
int choose_iterations(double p_good, const IterationPolicy& policy, std::uint64_t n);

// t rounds of phase flip on the good states followed by reflection about the
// converted state.
AmplifiedState grover_iterate(const StateVector& converted, const GoodMask& mask, int t);

// Sample all registers per shot and decode: nonzero hash block reports
// HashNonzero, otherwise the index is verified classically against the
// dictionary.
MeasureResult measure_and_decode(const StateVector& final, const RegisterLayout& layout, int shots,
                                 std::uint64_t seed, std::span<const Word> dictionary, const Word& query);

// Stage boundaries of the structured pipeline, kept for cross-checks against
// the dense-matrix route.
struct PipelineStages {
    RegisterLayout layout;
    StateVector prepared;   // after uniform_index_and_flag
    StateVector dictionary; // after per-slot forward hashing
    StateVector converted;
    StateVector final;
    double p_good = 0.0;
    double theta = 0.0;
    int t = 0;
};

PipelineStages run_pipeline(const SearchInstance& instance);

// Full run: pipeline, measurement, report fields and bound checks.
RunReport run_search(const SearchInstance& instance);

// Dictionary files: one word per line, characters in {0,1}, uniform length,
// at most 2^20 lines.
std::vector<Word> load_dictionary_file(const std::string& path);
void save_dictionary_file(const std::string& path, std::span<const Word> dictionary);

}  // namespace qfh

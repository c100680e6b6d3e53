#include "qfh/oracles.hpp"

#include <cmath>
#include <stdexcept>

namespace qfh {

namespace {

constexpr int kMaxDenseQubits = 12;

}  // namespace

DenseMatrix DenseMatrix::zero(std::size_t rows, std::size_t cols) {
    DenseMatrix m{rows, cols, {}};
    m.data.assign(rows * cols, 0.0);
    return m;
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
    DenseMatrix m = zero(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
}

DenseMatrix DenseMatrix::hadamard() {
    DenseMatrix m = zero(2, 2);
    const double h = 1.0 / std::sqrt(2.0);
    m.at(0, 0) = h;
    m.at(0, 1) = h;
    m.at(1, 0) = h;
    m.at(1, 1) = -h;
    return m;
}

DenseMatrix DenseMatrix::pauli_x() {
    DenseMatrix m = zero(2, 2);
    m.at(0, 1) = 1.0;
    m.at(1, 0) = 1.0;
    return m;
}

DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b) {
    DenseMatrix m = DenseMatrix::zero(a.rows * b.rows, a.cols * b.cols);
    for (std::size_t ar = 0; ar < a.rows; ++ar)
        for (std::size_t ac = 0; ac < a.cols; ++ac) {
            const double f = a.at(ar, ac);
            if (f == 0.0) continue;
            for (std::size_t br = 0; br < b.rows; ++br)
                for (std::size_t bc = 0; bc < b.cols; ++bc)
                    m.at(ar * b.rows + br, ac * b.cols + bc) = f * b.at(br, bc);
        }
    return m;
}

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols != b.rows) throw std::invalid_argument("matrix product shape mismatch");
    DenseMatrix m = DenseMatrix::zero(a.rows, b.cols);
    for (std::size_t r = 0; r < a.rows; ++r)
        for (std::size_t k = 0; k < a.cols; ++k) {
            const double f = a.at(r, k);
            if (f == 0.0) continue;
            for (std::size_t c = 0; c < b.cols; ++c) m.at(r, c) += f * b.at(k, c);
        }
    return m;
}

std::vector<double> matvec(const DenseMatrix& a, const std::vector<double>& v) {
    if (a.cols != v.size()) throw std::invalid_argument("matrix-vector shape mismatch");
    std::vector<double> out(a.rows, 0.0);
    for (std::size_t r = 0; r < a.rows; ++r) {
        double sum = 0.0;
        const double* row = a.data.data() + r * a.cols;
        for (std::size_t c = 0; c < a.cols; ++c) sum += row[c] * v[c];
        out[r] = sum;
    }
    return out;
}

DenseMatrix kron_power(const DenseMatrix& a, int n) {
    if (n < 0) throw std::invalid_argument("kron power needs n >= 0");
    DenseMatrix m = DenseMatrix::identity(1);
    for (int k = 0; k < n; ++k) m = kron(m, a);
    return m;
}

DenseMatrix dense_codeword_xor(const LinearCode& code, const Word& w) {
    const Codeword cw = encode(code, w);
    const std::size_t dim = std::size_t{1} << (code.s + 1);
    DenseMatrix m = DenseMatrix::zero(dim, dim);
    for (std::size_t col = 0; col < dim; ++col) {
        const std::size_t i = col >> 1;
        const std::size_t b = col & 1;
        const std::size_t row = (i << 1) | (b ^ static_cast<std::size_t>(cw.bit(static_cast<int>(i))));
        m.at(row, col) = 1.0;
    }
    return m;
}

DenseMatrix dense_block_forward(const LinearCode& code, const Word& w) {
    const DenseMatrix spread = kron(kron_power(DenseMatrix::hadamard(), code.s), DenseMatrix::identity(2));
    return matmul(dense_codeword_xor(code, w), spread);
}

DenseMatrix dense_block_inverse(const LinearCode& code, const Word& w) {
    const DenseMatrix collect = kron(kron_power(DenseMatrix::hadamard(), code.s), DenseMatrix::identity(2));
    return matmul(collect, dense_codeword_xor(code, w));
}

DenseMatrix dense_preparation(const RegisterLayout& layout) {
    const DenseMatrix idx = kron_power(DenseMatrix::hadamard(), layout.idx_bits);
    const DenseMatrix block = DenseMatrix::identity(std::size_t{1} << (layout.hash_idx_bits + 1));
    return kron(kron(idx, block), DenseMatrix::pauli_x());
}

DenseMatrix dense_dictionary_build(const RegisterLayout& layout, const LinearCode& code,
                                   std::span<const Word> dictionary) {
    if (dictionary.size() != layout.n()) throw std::invalid_argument("dictionary size does not match layout");
    const std::size_t dim = layout.dim();
    const std::size_t block = layout.block_size();
    DenseMatrix m = DenseMatrix::zero(dim, dim);
    for (std::uint64_t j = 0; j < layout.n(); ++j) {
        const DenseMatrix u = kron(dense_block_forward(code, dictionary[j]), DenseMatrix::identity(2));
        const std::size_t base = j * block;
        for (std::size_t r = 0; r < block; ++r)
            for (std::size_t c = 0; c < block; ++c) m.at(base + r, base + c) = u.at(r, c);
    }
    return m;
}

DenseMatrix dense_conversion(const RegisterLayout& layout, const LinearCode& code, const Word& query) {
    const DenseMatrix u = kron(dense_block_inverse(code, query), DenseMatrix::identity(2));
    return kron(DenseMatrix::identity(layout.n()), u);
}

std::vector<double> dense_good_phase_diag(const RegisterLayout& layout) {
    std::vector<double> diag(layout.dim(), 1.0);
    for (std::uint64_t j = 0; j < layout.n(); ++j) diag[layout.good_index(j)] = -1.0;
    return diag;
}

DenseMatrix dense_reflection(const std::vector<double>& axis) {
    const std::size_t dim = axis.size();
    DenseMatrix m = DenseMatrix::zero(dim, dim);
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) m.at(r, c) = 2.0 * axis[r] * axis[c];
        m.at(r, r) -= 1.0;
    }
    return m;
}

PipelineStages dense_pipeline(const SearchInstance& instance) {
    if (!instance.hash) throw std::invalid_argument("search instance has no hash");
    const LinearCode* code = instance.hash->linear_code();
    if (!code) throw std::invalid_argument("dense pipeline needs a code-backed hash");
    PipelineStages stages;
    stages.layout = layout_for(instance.dictionary.size(), *instance.hash);
    if (stages.layout.qubits() > kMaxDenseQubits)
        throw std::invalid_argument("dense pipeline is limited to 12 qubits");
    const std::size_t dim = stages.layout.dim();

    std::vector<double> v(dim, 0.0);
    v[0] = 1.0;
    v = matvec(dense_preparation(stages.layout), v);
    stages.prepared = StateVector(stages.layout.qubits());
    for (std::size_t k = 0; k < dim; ++k) stages.prepared[k] = v[k];

    v = matvec(dense_dictionary_build(stages.layout, *code, instance.dictionary), v);
    stages.dictionary = StateVector(stages.layout.qubits());
    for (std::size_t k = 0; k < dim; ++k) stages.dictionary[k] = v[k];

    v = matvec(dense_conversion(stages.layout, *code, instance.query), v);
    stages.converted = StateVector(stages.layout.qubits());
    for (std::size_t k = 0; k < dim; ++k) stages.converted[k] = v[k];

    stages.p_good = 0.0;
    for (std::uint64_t j = 0; j < stages.layout.n(); ++j) {
        const double a = v[stages.layout.good_index(j)];
        stages.p_good += a * a;
    }
    stages.theta = std::asin(std::sqrt(std::min(1.0, stages.p_good)));
    stages.t = choose_iterations(stages.p_good, instance.policy, stages.layout.n());

    const std::vector<double> diag = dense_good_phase_diag(stages.layout);
    const DenseMatrix reflect = dense_reflection(v);
    for (int round = 0; round < stages.t; ++round) {
        for (std::size_t k = 0; k < dim; ++k) v[k] *= diag[k];
        v = matvec(reflect, v);
    }
    stages.final = StateVector(stages.layout.qubits());
    for (std::size_t k = 0; k < dim; ++k) stages.final[k] = v[k];
    return stages;
}

std::vector<OverlapRow> overlap_table(std::span<const Word> dictionary, const Word& query,
                                    const FingerprintHash& hash) {
    const RegisterLayout layout = layout_for(dictionary.size(), hash);
    StateVector state = build_dictionary_state(dictionary, hash, layout);
    apply_conversion(state, query, hash, layout);
    const double scale = std::sqrt(static_cast<double>(layout.n()));
    std::vector<OverlapRow> rows;
    rows.reserve(dictionary.size());
    for (std::uint64_t j = 0; j < layout.n(); ++j) {
        OverlapRow row;
        row.j = j;
        row.d = pair_distance(hash.code(), dictionary[j], query);
        row.alpha0 = scale * state[layout.good_index(j)];
        rows.push_back(row);
    }
    return rows;
}

}  // namespace qfh

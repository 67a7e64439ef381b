#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "heckespan/modforms.hpp"
#include "heckespan/newforms.hpp"

namespace heckespan::spanrank {

using arith::Int;
using arith::Rat;
using modforms::QExpansion;

// rows indexed by coefficient indices n, columns by basis forms
struct CoeffMatrix {
    std::vector<uint64_t> row_indices;
    std::vector<std::vector<Rat>> entries;  // rows x cols

    std::size_t rows() const { return entries.size(); }
    std::size_t cols() const { return entries.empty() ? 0 : entries[0].size(); }
};

CoeffMatrix coeff_matrix(const std::vector<QExpansion>& basis,
                         const std::vector<uint64_t>& indices);

// rank over Q via fraction-free Bareiss elimination on cleared denominators
int exact_rank(const CoeffMatrix& m);
int exact_rank_rows(const std::vector<std::vector<Rat>>& rows);

// exact determinant of a square rational matrix
Rat exact_det(const std::vector<std::vector<Rat>>& rows);

struct SpanReport {
    unsigned weight = 0;
    uint64_t level = 1;
    int dim = 0;
    std::optional<uint64_t> minimal_n;  // none => not found <= n_max
    uint64_t n_max = 0;
    uint64_t sturm = 0;
    uint64_t sage_hypothesis = 0;
    std::vector<int> rank_trace;  // rank after each added row 1..n
};

uint64_t sturm_bound(unsigned k, uint64_t N);
uint64_t sage_hypothesis_bound(unsigned k, uint64_t N);

SpanReport minimal_hecke_bound(unsigned k, uint64_t N, uint64_t n_max,
                               const nf::CuspSource& cusp_source);

// T_{p N/M} for p <= X_M, p coprime to M, unioned over divisors M | N
struct GeneratorEntry {
    uint64_t op_index;  // p * N / M
    uint64_t p;
    uint64_t M;
};

std::vector<GeneratorEntry> theorem_generator_set(
    unsigned k, uint64_t N,
    const std::vector<std::pair<uint64_t, uint64_t>>& X_map);

struct VerifyResult {
    bool full_rank = false;
    std::vector<uint64_t> certificate;  // row indices of a full-rank subset
};

VerifyResult verify_generator_set(unsigned k, uint64_t N,
                                  const std::vector<uint64_t>& op_indices,
                                  const nf::CuspSource& cusp_source);

// witness tuple search over the (E|S)(p_1..p_m) block determinant
struct WitnessResult {
    enum class Status { found, none, indeterminate };
    Status status = Status::none;
    std::vector<uint64_t> primes;
};

WitnessResult find_witness_primes(unsigned k, uint64_t M, uint64_t X,
                                  const nf::CuspSource& cusp_source);

}  // namespace heckespan::spanrank

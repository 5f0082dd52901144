#pragma once

#include "hyperred/ball.hpp"
#include "hyperred/mumford.hpp"
#include "hyperred/poly.hpp"

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace hyperred {

struct FamilySpec {
    int g = 1;
    Rat X = 2;
    double delta = 0.5;
    double epsilon = 0.5;
    std::uint64_t seed = 1;
    long precision = 0; // 0: working precision
};

// HYPERRED_THREADS, capped by the hardware; at least 1.
int thread_count();

// Every f with integer c_i, |c_i| < X^i and nonzero discriminant, in lexicographic
// order of (c_2, ..., c_{2g+1}).
void for_each_family(int g, const Rat& X, const std::function<void(const IntPoly&)>& fn);
std::vector<IntPoly> enumerate_family(int g, const Rat& X);

struct FamilyCount {
    Int boxes;     // all coefficient tuples
    Int zero_disc; // tuples with discriminant 0 (separate exact pass, when requested)
    Int count;     // members of the family
};
FamilyCount count_family(int g, const Rat& X, bool cross_check = true);

// Uniform over the family by rejection.
IntPoly random_family_member(int g, const Rat& X, std::mt19937_64& rng);

enum class Verdict { False, True, Unknown };
const char* verdict_name(Verdict v);

// min_{i<j} |w_i - w_j| > X^{1-delta}, certified. Throws RepeatedRoot.
Verdict filter_m_delta1(const IntPoly& f, double delta, const Rat& X);

struct NormBoundReport {
    int m = 0;
    Ball lhs, rhs; // both sides of the inequality
    double margin = 0;
    bool holds = false; // certified lhs <= rhs
};
// Throws FilterNotSatisfied when f is not certified in the family and filter, or U
// is not monic of degree 1..g coprime to f.
NormBoundReport norm_bound_check(const IntPoly& f, const RatPoly& U, double delta, const Rat& X);
// c_{g,m}
Ball norm_bound_constant(int g, int m);

struct DoublingReport {
    int m = 0;
    Int H_D, H_2D;          // naive heights of the U polynomials
    double h_D = 0, h_2D = 0;
    bool holds = false;     // H(2D) 2^{6m-2} >= H(D)^2, exactly
    bool divisor_doubling = false; // U(2D) = U(D)^2
};
// NotApplicable unless D and 2D are nontrivial with the same Mumford degree.
DoublingReport doubling_check(const JacobianPoint& P);

struct HeightGapRecord {
    IntPoly f;
    Ball ht;
    Verdict in_m = Verdict::Unknown;
    bool small = false;  // a point with h† < (g - eps) log Ht was found
    double min_h = -1;   // smallest h† found, -1 if none
    std::string witness; // triple of the smallest point
};

struct HeightGapRow {
    Rat X;
    long sampled = 0, certified = 0, small = 0, small_certified = 0;
    bool exhaustive = false;
    double fraction() const { return sampled ? double(small) / sampled : 0.0; }
    double fraction_certified() const { return certified ? double(small_certified) / certified : 0.0; }
};

struct HeightGapResult {
    std::vector<HeightGapRow> rows;
    std::vector<HeightGapRecord> records;
    std::string csv() const;
    std::string records_csv() const;
};

// For each X: the whole family when it has at most `samples` members, otherwise
// `samples` seeded uniform draws. The search bound is capped at Ht^{g-eps}, which
// makes the degree-one search exhaustive for small points.
HeightGapResult height_gap_experiment(const FamilySpec& spec, const std::vector<Rat>& Xs, long samples,
                                      long search_bound);

struct EquidistResult {
    long samples = 0, drawn = 0, rejected_repeated = 0, rejected_distinguished = 0;
    std::vector<double> eps;
    double scale = 1; // c^g
    std::vector<long> below; // samples with shortest length < c^g eps
    std::vector<double> lengths, t1;
    double fraction(size_t i) const { return samples ? double(below[i]) / samples : 0.0; }
    std::string csv() const;
};

// Random traceless J-self-adjoint integer T with entries in [-entry_bound, entry_bound].
EquidistResult equidistribution_experiment(const FamilySpec& spec, long samples, const std::vector<double>& eps_grid,
                                           long entry_bound = 10, long distinguished_bound = 1);

} // namespace hyperred

#pragma once

// Frame and total Virasoro operators on every sector, built directly from the
// bilinear normal-ordered sums
//
//   L^i(n) = 1/2 sum_j j :a_i(-j) a_i(j+n):  (+ d_i/16 on L^i(0))
//
// with j running over the fermion's mode set in the given sector.  These are
// deliberately independent of the vertex-operator machinery so the two can be
// cross-checked.  Also: divided powers L(+-1)^n/n!, the Ising character
// oracles, and exact highest-weight-vector decomposition per degree.

#include "linalg.hpp"

#include <array>
#include <string>
#include <vector>

namespace fvoa {

// ---------------------------------------------------------------------------
// Frame Virasoro action (fermion i only).

inline Rational ring_from_sixteenth(const Rational&, int v16) { return Rational(v16, 16); }
inline Fp ring_from_sixteenth(const Fp& hint, int v16) {
    std::int64_t p = static_cast<std::int64_t>(hint.p);
    std::uint64_t res = static_cast<std::uint64_t>(((v16 % p) + p) % p);
    return Fp(res, hint.p) * ring_pow2(hint, -4);
}

template <class R>
FockVector<R> frame_virasoro_mode(int fermion, int n, const FockVector<R>& v, R ring_hint) {
    Codeword d = v.sector();
    if (fermion < 1 || fermion > d.len) throw std::domain_error("fermion index out of range");
    int n16 = 16 * n;
    FockVector<R> out(d);
    if (v.is_zero()) return out;

    int depth = v.max_mode_depth16();
    int residue = d.get(fermion - 1) ? 0 : 8;
    int bound = depth + std::abs(n16) + 32;
    int start = -bound + (residue - ((-bound % 16) + 16) % 16 + 16) % 16;
    for (int j16 = start; j16 <= bound; j16 += 16) {
        if (j16 == 0) continue; // coefficient j = 0
        int m1 = -j16;      // left factor after normal ordering when m1 <= m2
        int m2 = j16 + n16; // right factor
        if (m1 == m2) continue; // a(x)^2 = 0 for x != 0; x = 0 has j = 0
        bool swap = m1 > m2;
        int first = swap ? m1 : m2; // applied first (rightmost, larger mode)
        int second = swap ? m2 : m1;
        if (first > depth) continue; // annihilator beyond every stored mode
        FockVector<R> t = apply_mode(Mode{fermion, first}, v);
        if (t.is_zero()) continue;
        t = apply_mode(Mode{fermion, second}, t);
        if (t.is_zero()) continue;
        R c = ring_pow2(ring_hint, -1); // the 1/2 prefactor
        c *= ring_from_sixteenth(ring_hint, j16);
        if (swap) c = -c;
        t.scale(c);
        out += t;
    }
    if (n == 0 && d.get(fermion - 1)) {
        FockVector<R> shift = v;
        R c = ring_pow2(ring_hint, -4); // 1/16
        shift.scale(c);
        out += shift;
    }
    return out;
}

inline FockVector<Rational> frame_virasoro_mode(int fermion, int n, const FockVector<Rational>& v) {
    return frame_virasoro_mode(fermion, n, v, Rational(0));
}

template <class R>
FockVector<R> total_virasoro_mode(int n, const FockVector<R>& v, R ring_hint) {
    FockVector<R> out(v.sector());
    for (int i = 1; i <= v.sector().len; ++i) out += frame_virasoro_mode(i, n, v, ring_hint);
    return out;
}

inline FockVector<Rational> total_virasoro_mode(int n, const FockVector<Rational>& v) {
    return total_virasoro_mode(n, v, Rational(0));
}

// L(1)^n/n! or L(-1)^n/n!, computed over Q.  Lattice inputs come back dyadic
// (asserted where callers need it, not here).
inline FockVector<Rational> divided_power(int which /* +1 or -1 */, int n,
                                          const FockVector<Rational>& v) {
    if (which != 1 && which != -1) throw std::domain_error("divided_power takes L(1) or L(-1)");
    if (n < 0) throw std::domain_error("divided power order must be >= 0");
    FockVector<Rational> out = v;
    for (int k = 1; k <= n; ++k) {
        out = total_virasoro_mode(which, out);
        out.scale(Rational(1, k));
        if (out.is_zero()) break;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Ising character oracles: graded dimensions of L(1/2,h) by level.
//
//   h = 0    : strict half-odd-integer partitions, even length
//   h = 1/2  : strict half-odd-integer partitions, odd length
//   h = 1/16 : strict positive-integer partitions (either parity; the
//              cost-free zero mode pairs the two length parities)

inline std::vector<std::int64_t> ising_graded_dims(int h16, int max_level) {
    if (max_level < 0 || max_level > 40) throw std::domain_error("ising level window is 0..40");
    std::vector<std::int64_t> out(max_level + 1, 0);
    if (h16 == 0 || h16 == 8) {
        // parts n + 1/2: cost in units is n + 1/2; track doubled degree
        int max2 = 2 * max_level + 1;
        std::vector<std::array<std::int64_t, 2>> dp(max2 + 1, {0, 0});
        dp[0][0] = 1;
        for (int part2 = 1; part2 <= max2; part2 += 2) {
            for (int deg = max2; deg >= part2; --deg)
                for (int par = 0; par < 2; ++par) dp[deg][par] += dp[deg - part2][par ^ 1];
        }
        int want_par = (h16 == 0) ? 0 : 1;
        for (int lvl = 0; lvl <= max_level; ++lvl) {
            int deg2 = 2 * lvl + (h16 == 8 ? 1 : 0);
            if (deg2 <= max2) out[lvl] = dp[deg2][want_par];
        }
        return out;
    }
    if (h16 == 1) {
        std::vector<std::int64_t> dp(max_level + 1, 0);
        dp[0] = 1;
        for (int part = 1; part <= max_level; ++part)
            for (int deg = max_level; deg >= part; --deg) dp[deg] += dp[deg - part];
        for (int lvl = 0; lvl <= max_level; ++lvl) out[lvl] = dp[lvl];
        return out;
    }
    throw std::domain_error("h must be one of 0, 1/2, 1/16 (as sixteenths: 0, 8, 1)");
}

// ---------------------------------------------------------------------------
// Highest-weight decomposition.

struct HighestWeightReport {
    SixteenthInt degree16;
    std::vector<int> pattern16; // h_i as sixteenths: 0, 8, or 1
    std::vector<FockVector<Rational>> vectors;
    std::int64_t multiplicity = 0;

    std::string pattern_string() const {
        std::string s;
        for (size_t i = 0; i < pattern16.size(); ++i) {
            if (i) s += ",";
            s += SixteenthInt(pattern16[i]).to_string();
        }
        return s;
    }
};

// All patterns compatible with the sector at the given degree: h_i = 1/16 on
// supp(d); h_i in {0,1/2} elsewhere with sum of halves matching the degree.
inline std::vector<std::vector<int>> sector_patterns_at_degree(Codeword d, SixteenthInt degree16) {
    std::vector<std::vector<int>> out;
    std::int64_t free_sum16 = degree16.value16 - d.weight();
    if (free_sum16 < 0 || free_sum16 % 8 != 0) return out;
    int halves = static_cast<int>(free_sum16 / 8);
    std::vector<int> free_pos;
    for (int i = 0; i < d.len; ++i)
        if (!d.get(i)) free_pos.push_back(i);
    if (halves > static_cast<int>(free_pos.size())) return out;
    // choose which free positions carry 1/2
    std::vector<int> choose(free_pos.size(), 0);
    std::function<void(size_t, int)> rec = [&](size_t idx, int left) {
        if (left == 0) {
            std::vector<int> pat(d.len, 0);
            for (int i = 0; i < d.len; ++i)
                if (d.get(i)) pat[i] = 1;
            for (size_t j = 0; j < free_pos.size(); ++j)
                if (choose[j]) pat[free_pos[j]] = 8;
            out.push_back(std::move(pat));
            return;
        }
        if (idx == free_pos.size() || static_cast<int>(free_pos.size() - idx) < left) return;
        choose[idx] = 1;
        rec(idx + 1, left - 1);
        choose[idx] = 0;
        rec(idx + 1, left);
    };
    rec(0, halves);
    return out;
}

// Exact kernel computation of the stacked maps L^i(1), L^i(2) per degree
// (higher L^i(n) are bracket-generated), split into simultaneous L^i(0)
// eigenspaces for each admissible pattern.
inline std::vector<HighestWeightReport> highest_weight_decomposition(Codeword d,
                                                                     SixteenthInt max_degree16) {
    if (d.len > 6) throw TooLarge("highest-weight search limited to r <= 6");
    if (max_degree16.value16 > 16 * 8) throw TooLarge("highest-weight search limited to degree 8");
    std::vector<HighestWeightReport> reports;
    int r = d.len;

    for (std::int64_t deg16 = d.weight(); deg16 <= max_degree16.value16; ++deg16) {
        auto patterns = sector_patterns_at_degree(d, SixteenthInt(deg16));
        if (patterns.empty()) continue;
        auto basis = enumerate_monomials(d, SixteenthInt(deg16));
        if (basis.empty()) continue;
        size_t n = basis.size();

        auto vec_of = [&](MonoId id) {
            FockVector<Rational> v(d);
            v.add_term(id, Rational(1));
            return v;
        };

        // target bases for the images
        auto img_index = [&](SixteenthInt tdeg) {
            std::map<MonoId, size_t> idx;
            for (MonoId id : enumerate_monomials(d, tdeg)) {
                size_t k = idx.size();
                idx[id] = k;
            }
            return idx;
        };
        auto idx1 = img_index(SixteenthInt(deg16 - 16));
        auto idx2 = img_index(SixteenthInt(deg16 - 32));

        size_t rows = r * (idx1.size() + idx2.size());
        Matrix<Rational> A(rows ? rows : 1, n, Rational(0));
        for (size_t j = 0; j < n; ++j) {
            FockVector<Rational> v = vec_of(basis[j]);
            size_t row0 = 0;
            for (int i = 1; i <= r; ++i) {
                FockVector<Rational> l1 = frame_virasoro_mode(i, 1, v);
                for (const auto& [id, c] : l1.terms()) A.at(row0 + idx1.at(id), j) = c;
                row0 += idx1.size();
                FockVector<Rational> l2 = frame_virasoro_mode(i, 2, v);
                for (const auto& [id, c] : l2.terms()) A.at(row0 + idx2.at(id), j) = c;
                row0 += idx2.size();
            }
        }
        auto kernel = A.kernel_basis();
        if (kernel.empty()) continue;

        // split the kernel by the commuting L^i(0) actions
        auto kernel_vec = [&](const std::vector<Rational>& x) {
            FockVector<Rational> v(d);
            for (size_t j = 0; j < n; ++j) {
                if (ring_is_zero(x[j])) continue;
                FockVector<Rational> t = vec_of(basis[j]);
                t.scale(x[j]);
                v += t;
            }
            return v;
        };
        std::vector<FockVector<Rational>> kvecs;
        for (const auto& x : kernel) kvecs.push_back(kernel_vec(x));

        for (const auto& pat : patterns) {
            // solve for combinations y with (L^i(0) - h_i) sum_k y_k kvec_k = 0
            std::map<MonoId, size_t> idx0;
            for (MonoId id : basis) {
                size_t k = idx0.size();
                idx0[id] = k;
            }
            Matrix<Rational> B(r * n, kvecs.size(), Rational(0));
            for (size_t k = 0; k < kvecs.size(); ++k) {
                for (int i = 1; i <= r; ++i) {
                    FockVector<Rational> w = frame_virasoro_mode(i, 0, kvecs[k]);
                    FockVector<Rational> shift = kvecs[k];
                    shift.scale(Rational(pat[i - 1], 16));
                    w -= shift;
                    for (const auto& [id, c] : w.terms()) B.at((i - 1) * n + idx0.at(id), k) = c;
                }
            }
            auto eig = B.kernel_basis();
            if (eig.empty()) continue;
            HighestWeightReport rep;
            rep.degree16 = SixteenthInt(deg16);
            rep.pattern16 = pat;
            rep.multiplicity = static_cast<std::int64_t>(eig.size());
            for (const auto& y : eig) {
                FockVector<Rational> v(d);
                for (size_t k = 0; k < kvecs.size(); ++k) {
                    if (ring_is_zero(y[k])) continue;
                    FockVector<Rational> t = kvecs[k];
                    t.scale(y[k]);
                    v += t;
                }
                rep.vectors.push_back(std::move(v));
            }
            reports.push_back(std::move(rep));
        }
    }
    return reports;
}

} // namespace fvoa

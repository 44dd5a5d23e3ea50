#pragma once

// Vertex and intertwining operators between the twisted sectors V(H,d).
//
// Case split on the input sectors (d1 = sector of u, d2 = sector of w):
//
//   d1 = 0    The (possibly twisted) module action.  Generators act through
//             their mode sums; a composite monomial is peeled one mode at a
//             time via the iterate identity extracted from the twisted
//             Jacobi identity.  This route produces the twisted corrections
//             (e.g. the |d|/16 shift in L(0)) without a closed-form
//             correction kernel.
//
//   d1 != 0   Per-fermion wedge composition Y(u^1,z)...Y(u^r,z) with super
//             tensor-leg signs.  Single-fermion factors use the skew
//             symmetry formula (twisted acting on untwisted) and the adjoint
//             formula resolved against the orthogonal monomial basis
//             (twisted acting on twisted).
//
// Everything is exact and memoized per (monomial, monomial, exponent16).

#include "virasoro.hpp"

#include <tuple>
#include <unordered_map>

namespace fvoa {

struct WindowTooLarge : std::domain_error {
    explicit WindowTooLarge(const std::string& what) : std::domain_error(what) {}
};
struct SectorIllegal : std::domain_error {
    explicit SectorIllegal(const std::string& what) : std::domain_error(what) {}
};

using QVec = FockVector<Rational>;

namespace vertex_detail {

struct Key {
    MonoId u;
    MonoId w;
    int e16;
    bool operator==(const Key& o) const { return u == o.u && w == o.w && e16 == o.e16; }
};
struct KeyHash {
    size_t operator()(const Key& k) const {
        return std::hash<std::uint64_t>{}((std::uint64_t(k.u) << 32) ^ k.w) ^
               std::hash<std::int64_t>{}(static_cast<std::int64_t>(k.e16) * 0x9e3779b97f4a7cll);
    }
};

inline std::unordered_map<Key, QVec, KeyHash>& memo() {
    static std::unordered_map<Key, QVec, KeyHash> m;
    return m;
}

inline Rational binom(const Rational& top, int k) {
    Rational r(1);
    for (int j = 0; j < k; ++j) {
        r *= (top - j);
        r /= (j + 1);
    }
    return r;
}

// (-z)^e on the half-integer grid: sign (-1)^{floor(e)}.
inline int neg_z_sign(int e16) {
    std::int64_t fl = e16 >= 0 ? e16 / 16 : (e16 - 15) / 16;
    return (fl & 1) ? -1 : 1;
}

// Lowest possible z-exponent of Y(u,z)w from the degree grading.
inline int min_exponent16(const Monomial& u, const Monomial& w) {
    Codeword out = u.sector + w.sector;
    return static_cast<int>(out.weight() - u.degree16().value16 - w.degree16().value16);
}

QVec dispatch_mono(MonoId u_id, MonoId w_id, int e16);

inline QVec dispatch_vec_right(MonoId u_id, const QVec& w, int e16) {
    QVec out(mono(u_id).sector + w.sector());
    for (const auto& [wid, c] : w.terms()) {
        QVec t = dispatch_mono(u_id, wid, e16);
        t.scale(c);
        out += t;
    }
    return out;
}

inline QVec dispatch_vec(const QVec& u, const QVec& w, int e16) {
    QVec out(u.sector() + w.sector());
    for (const auto& [uid, cu] : u.terms()) {
        QVec t = dispatch_vec_right(uid, w, e16);
        t.scale(cu);
        out += t;
    }
    return out;
}

// --------------------------------------------------------------------------
// Untwisted u: derivative fields and the peel recursion.

// Y(a_i(-n-1/2)1, z) = (1/n!) d^n a_i(z); coefficient of z^{e16} applied to w.
inline QVec derivative_field_apply(Mode state_mode, const QVec& w, int e16) {
    int n = (-state_mode.n16 - 8) / 16; // state mode is -n - 1/2, n >= 0
    int m16 = -e16 - 16 * n - 8;        // physics mode in the target sector
    if (!mode_legal_in_sector(Mode{state_mode.fermion, m16}, w.sector())) return QVec(w.sector());
    Rational c = binom(Rational(-m16 - 8, 16), n); // binom(-m - 1/2, n)
    if (c.is_zero()) return QVec(w.sector());
    QVec out = apply_mode(Mode{state_mode.fermion, m16}, w);
    out.scale(c);
    return out;
}

// Peel iterate for untwisted composite u = a_i(n1) u_rest acting on sector e:
//
//   Y(u,z2)w = z2^{N+1-j/2} Coeff_{z1^{N-j/2}}[ (z1-z2)^t Y(v,z1)Y(u_rest,z2)w
//                - eps (-z2+z1)^t Y(u_rest,z2)Y(v,z1)w ]
//              - sum_{k>=1} (-1)^k C(N+k-j/2,k) z2^{-k} Y(a_i(n1+k)u_rest,z2)w
//
// with v = a_i(-1/2)1, t = n1 - 1/2 in Z, j = e_i, eps = (-1)^{|u_rest|}, and
// N a free integer (0 here).  Every sum truncates through the degree grading.
inline QVec peel_apply(MonoId u_id, MonoId w_id, int e16) {
    const Monomial& u = mono(u_id);
    const Monomial& w = mono(w_id);
    Codeword sec = w.sector;
    QVec out(sec);

    Mode first = u.modes.front();
    int i = first.fermion;
    int t = (first.n16 - 8) / 16; // Borcherds index of the peeled mode
    Monomial rest{u.sector, {u.modes.begin() + 1, u.modes.end()}};
    MonoId rest_id = MonoPool::instance().intern(rest);
    int j = sec.get(i - 1) ? 1 : 0;
    bool eps_neg = (rest.length() & 1) != 0;
    constexpr int N = 0;

    // term A: z1-coefficient extraction from (z1-z2)^t Y(v,z1) Y(u_rest,z2) w
    {
        int A16 = e16 - 16 * N - 16 + 8 * j; // inner z2-exponent target
        int emin_rest = min_exponent16(rest, w);
        for (int a = 0;; ++a) {
            if (t >= 0 && a > t) break;
            int e2 = A16 - 16 * a;
            if (e2 < emin_rest) break;
            Rational coef = binom(Rational(t), a);
            if (a & 1) coef = -coef;
            QVec inner = dispatch_mono(rest_id, w_id, e2);
            if (inner.is_zero()) continue;
            int p16 = 16 * N - 8 * j - 16 * (t - a); // extracted z1-exponent
            QVec term = apply_mode(Mode{i, -p16 - 8}, inner);
            term.scale(coef);
            out += term;
        }
    }

    // term B: -eps (-z2+z1)^t Y(u_rest,z2) Y(v,z1) w
    {
        int depth = 0;
        for (Mode m : w.modes) depth = std::max(depth, -m.n16);
        QVec wvec(sec);
        wvec.add_term(w_id, Rational(1));
        for (int b = 0;; ++b) {
            if (t >= 0 && b > t) break;
            int m16 = 8 * j - 16 * N + 16 * b - 8; // generator mode applied to w
            if (m16 > depth) break;                // annihilator beyond stored modes
            Rational coef = binom(Rational(t), b);
            if ((t - b) & 1) coef = -coef;
            QVec gv = apply_mode(Mode{i, m16}, wvec);
            if (gv.is_zero()) continue;
            int e2 = e16 - 16 * N - 16 + 8 * j - 16 * (t - b);
            QVec term(sec);
            for (const auto& [gid, gc] : gv.terms()) {
                QVec tt = dispatch_mono(rest_id, gid, e2);
                tt.scale(gc);
                term += tt;
            }
            term.scale(coef);
            if (!eps_neg) term = -term;
            out += term;
        }
    }

    // corrections: Y(a_i(n1 + k) u_rest, z2) w for k >= 1
    {
        int rest_depth = 0;
        for (Mode m : rest.modes) rest_depth = std::max(rest_depth, -m.n16);
        QVec rest_vec(u.sector);
        rest_vec.add_term(rest_id, Rational(1));
        for (int k = 1;; ++k) {
            int m16 = first.n16 + 16 * k;
            if (m16 > rest_depth) break; // annihilator finds no partner, now or later
            QVec pushed = apply_mode(Mode{i, m16}, rest_vec);
            if (pushed.is_zero()) continue;
            Rational coef = binom(Rational(2 * N + 2 * k - j, 2), k);
            if ((k & 1) == 0) coef = -coef; // total sign -(-1)^k
            if (coef.is_zero()) continue;
            for (const auto& [pid, pc] : pushed.terms()) {
                QVec tt = dispatch_mono(pid, w_id, e16 + 16 * k);
                tt.scale(pc * coef);
                out += tt;
            }
        }
    }
    return out;
}

// --------------------------------------------------------------------------
// Single-fermion helpers.  SF states are monomials using only fermion i with
// sector supported at i (or trivial).

inline int frame_index_of(const Monomial& m) {
    for (Mode md : m.modes) return md.fermion;
    for (int i = 0; i < m.sector.len; ++i)
        if (m.sector.get(i)) return i + 1;
    throw std::domain_error("single-fermion vacuum in trivial sector has no frame index");
}

// L^i(which)^k / k! applied to v.
inline QVec frame_divided(int fermion, int which, int k, QVec v) {
    for (int j = 1; j <= k; ++j) {
        v = frame_virasoro_mode(fermion, which, v);
        v.scale(Rational(1, j));
        if (v.is_zero()) break;
    }
    return v;
}

// SF skew symmetry: Y(u,z)x = (-1)^{|u||x|} e^{z L^i(-1)} Y(x,-z)u, u in the
// twisted SF sector, x untwisted, both pure fermion i.
inline QVec sf_skew_apply(MonoId u_id, MonoId x_id, int e16) {
    static std::unordered_map<Key, QVec, KeyHash> sf_memo;
    Key key{u_id, x_id, e16};
    auto it = sf_memo.find(key);
    if (it != sf_memo.end()) return it->second;

    const Monomial& u = mono(u_id);
    const Monomial& x = mono(x_id);
    int i = frame_index_of(u);
    QVec out(u.sector + x.sector);
    int emin = min_exponent16(x, u);
    for (int k = 0;; ++k) {
        int ek = e16 - 16 * k;
        if (ek < emin) break;
        QVec f = dispatch_mono(x_id, u_id, ek);
        if (f.is_zero()) continue;
        if (neg_z_sign(ek) < 0) f = -f;
        f = frame_divided(i, -1, k, f);
        out += f;
    }
    if ((u.length() & x.length() & 1) != 0) out = -out;
    sf_memo.emplace(key, out);
    return out;
}

// Orthonormal monomial basis of the untwisted SF space at a given degree.
inline std::vector<MonoId> sf_untwisted_basis(int fermion, int ambient, int deg16) {
    std::vector<MonoId> out;
    if (deg16 < 0 || deg16 % 8 != 0) return out;
    std::vector<std::pair<std::vector<int>, int>> blocks;
    detail_fock::fermion_blocks(false, deg16, blocks);
    Codeword zero = Codeword::zero(ambient);
    for (const auto& [list, cost] : blocks) {
        if (cost != deg16) continue;
        Monomial m{zero, {}};
        for (int n16 : list) m.modes.push_back(Mode{fermion, n16});
        out.push_back(MonoPool::instance().intern(std::move(m)));
    }
    return out;
}

// SF adjoint: for u, x both in the twisted SF sector of fermion i,
//   (Y(u,z)x, w) = (-1)^{|u||w|} (x, Y(e^{L(1)z}(-1)^{L(0)-1/16} z^{-2L(0)} u, z^{-1}) w),
// resolved against the orthonormal untwisted SF monomial basis.
inline QVec sf_adjoint_apply(MonoId u_id, MonoId x_id, int e16) {
    static std::unordered_map<Key, QVec, KeyHash> sf_memo;
    Key key{u_id, x_id, e16};
    auto it = sf_memo.find(key);
    if (it != sf_memo.end()) return it->second;

    const Monomial& u = mono(u_id);
    const Monomial& x = mono(x_id);
    int i = frame_index_of(u);
    Codeword out_sec = u.sector + x.sector;
    QVec out(out_sec);
    int degu = static_cast<int>(u.degree16().value16);
    int degx = static_cast<int>(x.degree16().value16);
    if ((degu - 1) % 16 != 0) throw SectorIllegal("twisted SF degree must be 1/16 + integer");
    int sign_u = (((degu - 1) / 16) & 1) ? -1 : 1;
    int degw16 = degu + degx + e16;
    auto onb = sf_untwisted_basis(i, u.sector.len, degw16);
    if (onb.empty()) {
        sf_memo.emplace(key, out);
        return out;
    }

    QVec xvec(x.sector);
    xvec.add_term(x_id, Rational(1));
    QVec uvec(u.sector);
    uvec.add_term(u_id, Rational(1));

    for (MonoId w_id : onb) {
        const Monomial& w = mono(w_id);
        Rational coeff(0);
        for (int k = 0;; ++k) {
            QVec uk = frame_divided(i, 1, k, uvec);
            if (uk.is_zero()) break;
            int f16 = -e16 - 2 * degu + 16 * k;
            QVec inner(u.sector);
            for (const auto& [ukid, ukc] : uk.terms()) {
                QVec t = sf_skew_apply(ukid, w_id, f16);
                t.scale(ukc);
                inner += t;
            }
            if (!inner.is_zero()) coeff += bilinear_form(xvec, inner);
        }
        if ((u.length() & w.length() & 1) != 0) coeff = -coeff;
        coeff *= sign_u;
        if (!coeff.is_zero()) out.add_term(w_id, coeff);
    }
    sf_memo.emplace(key, out);
    return out;
}

// --------------------------------------------------------------------------
// Wedge composition for twisted u.

// Sorts modes into canonical (n16, fermion) order, returning the permutation
// sign by inversion count.
inline int sort_sign(std::vector<Mode>& modes) {
    int inv = 0;
    for (size_t a = 0; a < modes.size(); ++a)
        for (size_t b = a + 1; b < modes.size(); ++b)
            if (modes[b] < modes[a]) ++inv;
    std::sort(modes.begin(), modes.end());
    return (inv & 1) ? -1 : 1;
}

inline bool fermion_group_less(Mode a, Mode b) {
    if (a.fermion != b.fermion) return a.fermion < b.fermion;
    return a.n16 < b.n16;
}

// Sign of regrouping a canonical mode list by fermion.
inline int regroup_sign(const std::vector<Mode>& canonical) {
    std::vector<Mode> grouped = canonical;
    std::stable_sort(grouped.begin(), grouped.end(), fermion_group_less);
    int inv = 0;
    for (size_t a = 0; a < grouped.size(); ++a)
        for (size_t b = a + 1; b < grouped.size(); ++b)
            if (grouped[b] < grouped[a]) ++inv;
    return (inv & 1) ? -1 : 1;
}

// Replaces the fermion-i block of M by the SF monomial N under the super
// tensor-leg convention for an operator of the given parity.
inline std::pair<Rational, MonoId> splice_slot(const Monomial& M, int fermion, const Monomial& N,
                                               int op_parity, Codeword new_sector) {
    int sigma1 = regroup_sign(M.modes);
    int before = 0;
    std::vector<Mode> grouped;
    grouped.reserve(M.modes.size() + N.modes.size());
    std::vector<Mode> by_fermion = M.modes;
    std::stable_sort(by_fermion.begin(), by_fermion.end(), fermion_group_less);
    for (Mode m : by_fermion)
        if (m.fermion < fermion) {
            grouped.push_back(m);
            ++before;
        }
    for (Mode m : N.modes) grouped.push_back(m);
    for (Mode m : by_fermion)
        if (m.fermion > fermion) grouped.push_back(m);
    int koszul = ((op_parity & 1) && (before & 1)) ? -1 : 1;
    int sigma2 = sort_sign(grouped);
    Monomial res{new_sector, grouped};
    return {Rational(sigma1 * koszul * sigma2), MonoPool::instance().intern(std::move(res))};
}

// Stage operator: the fermion-i factor Y(u^i,z) applied to a full monomial.
inline QVec stage_coeff_apply(const Monomial& ui, MonoId m_id, int e16) {
    const Monomial& M = mono(m_id);
    int i = frame_index_of(ui);
    bool u_twisted = ui.sector.weight() != 0;
    bool slot_twisted = M.sector.get(i - 1);

    if (!u_twisted) {
        // untwisted SF factor acts as the plain module structure
        MonoId ui_id = MonoPool::instance().intern(ui);
        return dispatch_mono(ui_id, m_id, e16);
    }

    Monomial xi{Codeword(slot_twisted ? (1ull << (i - 1)) : 0ull, M.sector.len), {}};
    for (Mode m : M.modes)
        if (m.fermion == i) xi.modes.push_back(m);
    MonoId xi_id = MonoPool::instance().intern(xi);
    MonoId ui_id = MonoPool::instance().intern(ui);

    QVec sf = slot_twisted ? sf_adjoint_apply(ui_id, xi_id, e16) : sf_skew_apply(ui_id, xi_id, e16);

    Codeword new_sector = M.sector + ui.sector;
    QVec out(new_sector);
    for (const auto& [nid, c] : sf.terms()) {
        auto [sc, rid] = splice_slot(M, i, mono(nid), ui.length() & 1, new_sector);
        if (sc.is_zero()) continue;
        out.add_term(rid, sc * c);
    }
    return out;
}

// Y(u,z)w for twisted u via staged per-fermion application, rightmost factor
// first, with exact per-monomial exponent bounds from the degree grading.
inline QVec twisted_product_mono(MonoId u_id, MonoId w_id, int e16) {
    const Monomial& u = mono(u_id);
    const Monomial& w = mono(w_id);
    int r = u.sector.len;

    std::vector<Mode> grouped = u.modes;
    int sigma = regroup_sign(u.modes);
    std::stable_sort(grouped.begin(), grouped.end(), fermion_group_less);

    struct Stage {
        Monomial ui;
        int deg16 = 0;
        int fermion = 0;
    };
    std::vector<Stage> stages; // application order: fermion r first
    for (int i = r; i >= 1; --i) {
        bool tw = u.sector.get(i - 1);
        std::vector<Mode> g;
        for (Mode m : grouped)
            if (m.fermion == i) g.push_back(m);
        if (!tw && g.empty()) continue;
        Stage s;
        s.ui = Monomial{Codeword(tw ? (1ull << (i - 1)) : 0ull, r), std::move(g)};
        s.deg16 = static_cast<int>(s.ui.degree16().value16);
        s.fermion = i;
        stages.push_back(std::move(s));
    }

    auto slot_deg = [](const Monomial& mm, int fi) {
        int d = mm.sector.get(fi - 1) ? 1 : 0;
        for (Mode m : mm.modes)
            if (m.fermion == fi) d -= m.n16;
        return d;
    };

    QVec out(u.sector + w.sector);
    std::function<void(size_t, MonoId, Rational, int)> rec = [&](size_t si, MonoId mid, Rational coeff,
                                                                 int e_rem) {
        if (si == stages.size()) {
            if (e_rem == 0) out.add_term(mid, coeff);
            return;
        }
        const Stage& st = stages[si];
        const Monomial& M = mono(mid);
        bool out_tw = st.ui.sector.get(st.fermion - 1) ^ M.sector.get(st.fermion - 1);
        int emin = (out_tw ? 1 : 0) - st.deg16 - slot_deg(M, st.fermion);
        int rem_min = 0;
        for (size_t sj = si + 1; sj < stages.size(); ++sj) {
            const Stage& s2 = stages[sj];
            bool tw2 = s2.ui.sector.get(s2.fermion - 1) ^ M.sector.get(s2.fermion - 1);
            rem_min += (tw2 ? 1 : 0) - s2.deg16 - slot_deg(M, s2.fermion);
        }
        int emax = e_rem - rem_min;
        int grid = out_tw ? 16 : 8;
        for (int e = emin; e <= emax; e += grid) {
            QVec res = stage_coeff_apply(st.ui, mid, e);
            for (const auto& [nid, c] : res.terms()) rec(si + 1, nid, coeff * c, e_rem - e);
        }
    };
    rec(0, w_id, Rational(sigma), e16);
    return out;
}

// --------------------------------------------------------------------------

inline QVec dispatch_mono_impl(MonoId u_id, MonoId w_id, int e16) {
    const Monomial& u = mono(u_id);
    const Monomial& w = mono(w_id);
    if (u.sector.weight() == 0) {
        if (u.modes.empty()) {
            QVec out(w.sector);
            if (e16 == 0) out.add_term(w_id, Rational(1));
            return out;
        }
        if (e16 < min_exponent16(u, w)) return QVec(w.sector);
        if (u.modes.size() == 1) {
            QVec wvec(w.sector);
            wvec.add_term(w_id, Rational(1));
            return derivative_field_apply(u.modes[0], wvec, e16);
        }
        return peel_apply(u_id, w_id, e16);
    }
    if (e16 < min_exponent16(u, w)) return QVec(u.sector + w.sector);
    return twisted_product_mono(u_id, w_id, e16);
}

inline QVec dispatch_mono(MonoId u_id, MonoId w_id, int e16) {
    Key k{u_id, w_id, e16};
    auto it = memo().find(k);
    if (it != memo().end()) return it->second;
    QVec result = dispatch_mono_impl(u_id, w_id, e16);
    memo().emplace(k, result);
    return result;
}

} // namespace vertex_detail

// ---------------------------------------------------------------------------
// Public surface.

// Coefficient of z^{e} in Y(u,z)w; homogeneous of degree deg u + deg w + e.
inline QVec field_coefficient(const QVec& u, const QVec& w, SixteenthInt e) {
    return vertex_detail::dispatch_vec(u, w, static_cast<int>(e.value16));
}

struct LaurentWindow {
    int lo16 = 0;
    int hi16 = -1;
    std::map<int, QVec> coeffs; // nonzero entries only
};

inline LaurentWindow field_window(const QVec& u, const QVec& w, int lo16, int hi16) {
    if (hi16 - lo16 > 16 * 64) throw WindowTooLarge("field window wider than 64 units");
    LaurentWindow win;
    win.lo16 = lo16;
    win.hi16 = hi16;
    for (int e = lo16; e <= hi16; ++e) {
        QVec c = field_coefficient(u, w, SixteenthInt(e));
        if (!c.is_zero()) win.coeffs.emplace(e, std::move(c));
    }
    return win;
}

// ---------------------------------------------------------------------------
// Weak commutativity / associativity checkers (twisted-Jacobi consequences).

struct Window2D {
    int p_lo, p_hi; // first variable exponents (sixteenths)
    int q_lo, q_hi; // second variable exponents
};

// (z1-z2)^{j/2+N} [Y(u,z1)Y(v,z2) - (-1)^{|u||v|} Y(v,z2)Y(u,z1)] w = 0 on
// all window coefficients.  u must be untwisted with even tau(sector v)
// parity so the clearing factor is a polynomial and the double arrays stay
// finite; v and w may live in any sector.
inline bool check_weak_commutativity(const QVec& u, const QVec& v, const QVec& w, int N,
                                     const Window2D& win) {
    if (u.sector().weight() != 0) throw SectorIllegal("first argument must be untwisted");
    if (N < 0) throw SectorIllegal("clearing exponent must be >= 0");
    int j = -1, upar = -1, vpar = -1;
    for (const auto& [id, c] : u.terms()) {
        int p = tau_parity(v.sector(), mono(id));
        if (j < 0) j = p;
        else if (j != p) throw SectorIllegal("first argument must be tau-homogeneous");
        if (upar < 0) upar = mono(id).parity();
        else if (upar != mono(id).parity()) throw SectorIllegal("first argument must be parity-homogeneous");
    }
    for (const auto& [id, c] : v.terms()) {
        if (vpar < 0) vpar = mono(id).parity();
        else if (vpar != mono(id).parity()) throw SectorIllegal("second argument must be parity-homogeneous");
    }
    if (j < 0 || vpar < 0) return true; // zero inputs
    if (j != 0) throw SectorIllegal("odd mutual parity: clearing factor is not polynomial");
    bool eps_neg = (upar & vpar & 1) != 0;

    Codeword out_sec = u.sector() + v.sector() + w.sector();
    auto A = [&](int p16, int q16) {
        QVec inner = field_coefficient(v, w, SixteenthInt(q16));
        if (inner.is_zero()) return QVec(out_sec);
        return field_coefficient(u, inner, SixteenthInt(p16));
    };
    auto B = [&](int p16, int q16) {
        QVec inner = field_coefficient(u, w, SixteenthInt(p16));
        if (inner.is_zero()) return QVec(out_sec);
        return field_coefficient(v, inner, SixteenthInt(q16));
    };

    for (int P = win.p_lo; P <= win.p_hi; ++P) {
        for (int Q = win.q_lo; Q <= win.q_hi; ++Q) {
            QVec acc(out_sec);
            for (int k = 0; k <= N; ++k) {
                Rational coef = vertex_detail::binom(Rational(N), k);
                if (k & 1) coef = -coef;
                int p = P - 16 * N + 16 * k;
                int q = Q - 16 * k;
                QVec term = A(p, q);
                QVec b = B(p, q);
                if (eps_neg) term += b;
                else term -= b;
                term.scale(coef);
                acc += term;
            }
            if (!acc.is_zero()) return false;
        }
    }
    return true;
}

// (z0+z2)^{j2/2+M} Y(v,z0+z2)Y(u,z2)w = (z2+z0)^{j2/2+M} Y(Y(v,z0)u,z2)w,
// compared coefficientwise on the window (z0 exponent = p, z2 exponent = q).
// v must be untwisted; j2 = tau(sector w)-parity of v; u, w in any sectors.
inline bool check_weak_associativity(const QVec& v, const QVec& u, const QVec& w, int M,
                                     const Window2D& win) {
    if (v.sector().weight() != 0) throw SectorIllegal("first argument must be untwisted");
    if (M < 0) throw SectorIllegal("clearing exponent must be >= 0");
    int j2 = -1;
    for (const auto& [id, c] : v.terms()) {
        int p = tau_parity(w.sector(), mono(id));
        if (j2 < 0) j2 = p;
        else if (j2 != p) throw SectorIllegal("first argument must be tau-homogeneous");
    }
    if (j2 < 0) return true;
    int alpha16 = 8 * j2 + 16 * M;
    Rational alpha = Rational(alpha16, 16);

    auto deg_of = [](const QVec& x) {
        auto d = x.homogeneous_degree16();
        if (!d) throw SectorIllegal("associativity check needs homogeneous inputs");
        return static_cast<int>(d->value16);
    };
    int degv = deg_of(v), degu = deg_of(u), degw = deg_of(w);
    int q0A = static_cast<int>((u.sector() + w.sector()).weight()) - degu - degw;
    int smin = static_cast<int>(u.sector().weight()) - degv - degu;

    Codeword out_sec = v.sector() + u.sector() + w.sector();
    for (int s = win.p_lo; s <= win.p_hi; ++s) {
        for (int t = win.q_lo; t <= win.q_hi; ++t) {
            // LHS: z1 -> z0+z2 substitution combined with the clearing factor:
            // contribution of Y(u,z2)w at q and Y(v,z1).. at p = s + c - alpha
            // with c = t - q >= 0 on unit steps.
            QVec lhs(out_sec);
            for (int q = q0A; q <= t; ++q) {
                int c16 = t - q;
                if (c16 % 16 != 0) continue;
                QVec inner = field_coefficient(u, w, SixteenthInt(q));
                if (inner.is_zero()) continue;
                int p16 = s + c16 - alpha16;
                QVec a = field_coefficient(v, inner, SixteenthInt(p16));
                if (a.is_zero()) continue;
                Rational coef = vertex_detail::binom(Rational(p16 + alpha16, 16), c16 / 16);
                if (coef.is_zero()) continue;
                a.scale(coef);
                lhs += a;
            }
            // RHS: (z2+z0)^alpha contributes z0^b on unit steps.
            QVec rhs(out_sec);
            for (int sp = smin; sp <= s; ++sp) {
                int b16 = s - sp;
                if (b16 % 16 != 0) continue;
                Rational coef = vertex_detail::binom(alpha, b16 / 16);
                if (coef.is_zero()) continue;
                QVec iter = field_coefficient(v, u, SixteenthInt(sp));
                if (iter.is_zero()) continue;
                QVec term = field_coefficient(iter, w, SixteenthInt(t - alpha16 + b16));
                if (term.is_zero()) continue;
                term.scale(coef);
                rhs += term;
            }
            if (!(lhs == rhs)) return false;
        }
    }
    return true;
}

} // namespace fvoa

#pragma once

// Twisted fermionic Fock spaces V(H,d): canonical monomials of fermion modes
// a_i(n) applied to the sector vacuum, the Clifford mode action, gradings and
// parities, and the bilinear form with square lengths 1/2^k.
//
// Mode numbers are stored as sixteenths (n16 = 16n) and are multiples of 8.
// In sector d, fermion i carries modes in Z + (d_i+1)/2: half-odd integers
// when d_i = 0, integers (including 0) when d_i = 1.  A canonical monomial
// lists modes with n16 <= 0, sorted by (n16, fermion), without repeats; zero
// modes appear only for i in supp(d).

#include "binary_code.hpp"
#include "scalar.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace fvoa {

struct SectorMismatch : std::domain_error {
    explicit SectorMismatch(const std::string& what) : std::domain_error(what) {}
};

struct Mode {
    int fermion = 1; // 1-based
    int n16 = 0;     // 16 * mode number, multiple of 8

    friend bool operator==(Mode a, Mode b) { return a.fermion == b.fermion && a.n16 == b.n16; }
    friend bool operator<(Mode a, Mode b) {
        if (a.n16 != b.n16) return a.n16 < b.n16;
        return a.fermion < b.fermion;
    }
};

inline bool mode_legal_in_sector(Mode m, Codeword d) {
    if (m.fermion < 1 || m.fermion > d.len) return false;
    bool twisted = d.get(m.fermion - 1);
    int res = ((m.n16 % 16) + 16) % 16;
    return twisted ? res == 0 : res == 8;
}

struct Monomial {
    Codeword sector;
    std::vector<Mode> modes; // canonical: sorted, n16 <= 0, no repeats

    int length() const { return static_cast<int>(modes.size()); }
    int parity() const { return length() & 1; }
    SixteenthInt degree16() const {
        std::int64_t deg = sector.weight();
        for (Mode m : modes) deg -= m.n16;
        return SixteenthInt(deg);
    }
    bool is_vacuum() const { return modes.empty(); }

    void validate() const {
        for (size_t i = 0; i < modes.size(); ++i) {
            if (modes[i].n16 > 0) throw std::domain_error("stored monomial modes must have n <= 0");
            if (!mode_legal_in_sector(modes[i], sector))
                throw SectorMismatch("mode illegal for sector " + sector.to_string());
            if (i > 0 && !(modes[i - 1] < modes[i]))
                throw std::domain_error("monomial modes not in canonical order");
        }
    }

    friend bool operator==(const Monomial& a, const Monomial& b) {
        return a.sector == b.sector && a.modes == b.modes;
    }
};

struct MonomialHash {
    size_t operator()(const Monomial& m) const {
        size_t h = std::hash<std::uint64_t>{}(m.sector.bits * 1315423911ull + m.sector.len);
        for (Mode md : m.modes) {
            h ^= std::hash<std::uint64_t>{}((static_cast<std::uint64_t>(md.fermion) << 32) ^
                                            static_cast<std::uint32_t>(md.n16)) +
                 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return h;
    }
};

using MonoId = std::uint32_t;

// Global intern pool: monomials are immutable and shared by id.
class MonoPool {
public:
    static MonoPool& instance() {
        static MonoPool pool;
        return pool;
    }

    MonoId intern(Monomial m) {
        auto it = ids_.find(m);
        if (it != ids_.end()) return it->second;
        m.validate();
        MonoId id = static_cast<MonoId>(store_.size());
        store_.push_back(m);
        ids_.emplace(store_.back(), id);
        return id;
    }

    const Monomial& get(MonoId id) const { return store_[id]; }

    MonoId vacuum(Codeword sector) { return intern(Monomial{sector, {}}); }

private:
    std::vector<Monomial> store_;
    std::unordered_map<Monomial, MonoId, MonomialHash> ids_;
};

inline const Monomial& mono(MonoId id) { return MonoPool::instance().get(id); }

// Content order used wherever deterministic iteration is needed (reports,
// serialization, pivot selection): degree, then length, then mode list, then
// sector bits.
inline bool monomial_content_less(const Monomial& a, const Monomial& b) {
    if (a.degree16() != b.degree16()) return a.degree16() < b.degree16();
    if (a.modes.size() != b.modes.size()) return a.modes.size() < b.modes.size();
    for (size_t i = 0; i < a.modes.size(); ++i) {
        if (a.modes[i] != b.modes[i]) return a.modes[i] < b.modes[i];
    }
    return a.sector.bits < b.sector.bits;
}

// ---------------------------------------------------------------------------
// Ring helpers shared by the coefficient types.

inline Rational ring_zero(const Rational&) { return Rational(0); }
inline Fp ring_zero(const Fp& x) { return Fp(0, x.p); }
inline Rational ring_div2(const Rational& x) { return x / 2; }
inline Fp ring_div2(const Fp& x) { return x * Fp(detail::invmod_u64(2, x.p), x.p); }
inline Rational ring_pow2(const Rational&, int k) {
    Rational r(1);
    Rational two(2);
    for (int i = 0; i < (k >= 0 ? k : -k); ++i) r *= two;
    if (k < 0) r = Rational(1) / r;
    return r;
}
inline Fp ring_pow2(const Fp& x, int k) {
    std::uint64_t two = 2 % x.p;
    std::uint64_t r = detail::powmod_u64(two, static_cast<std::uint64_t>(k >= 0 ? k : -k), x.p);
    if (k < 0) r = detail::invmod_u64(r, x.p);
    return Fp(r, x.p);
}
inline bool ring_is_zero(const Rational& x) { return x.is_zero(); }
inline bool ring_is_zero(const Fp& x) { return x.is_zero(); }

// ---------------------------------------------------------------------------
// Sparse exact linear combinations of monomials in one sector.

template <class R>
class FockVector {
public:
    FockVector() = default;
    explicit FockVector(Codeword sector) : sector_(sector) {}

    static FockVector vacuum(Codeword sector, R coeff) {
        FockVector v(sector);
        v.add_term(MonoPool::instance().vacuum(sector), coeff);
        return v;
    }

    Codeword sector() const { return sector_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }
    const std::map<MonoId, R>& terms() const { return terms_; }

    void add_term(MonoId id, const R& c) {
        if (ring_is_zero(c)) return;
        auto [it, inserted] = terms_.emplace(id, c);
        if (!inserted) {
            it->second += c;
            if (ring_is_zero(it->second)) terms_.erase(it);
        }
    }

    FockVector& operator+=(const FockVector& o) {
        require_same_sector(o);
        for (const auto& [id, c] : o.terms_) add_term(id, c);
        return *this;
    }
    FockVector& operator-=(const FockVector& o) {
        require_same_sector(o);
        for (const auto& [id, c] : o.terms_) add_term(id, -c);
        return *this;
    }
    friend FockVector operator+(FockVector a, const FockVector& b) { return a += b; }
    friend FockVector operator-(FockVector a, const FockVector& b) { return a -= b; }
    FockVector operator-() const {
        FockVector v(sector_);
        for (const auto& [id, c] : terms_) v.terms_.emplace(id, -c);
        return v;
    }
    FockVector& scale(const R& s) {
        if (ring_is_zero(s)) {
            terms_.clear();
            return *this;
        }
        for (auto& [id, c] : terms_) c *= s;
        return *this;
    }
    friend FockVector operator*(const R& s, FockVector v) { return v.scale(s); }

    friend bool operator==(const FockVector& a, const FockVector& b) {
        return a.sector_ == b.sector_ && a.terms_ == b.terms_;
    }

    // Homogeneous-degree query: the common degree if all terms share one.
    std::optional<SixteenthInt> homogeneous_degree16() const {
        std::optional<SixteenthInt> deg;
        for (const auto& [id, c] : terms_) {
            SixteenthInt d = mono(id).degree16();
            if (!deg) deg = d;
            else if (*deg != d) return std::nullopt;
        }
        return deg;
    }

    // Max annihilation depth that can pair with any stored mode: the largest
    // -n16 present (0 for the vacuum).
    int max_mode_depth16() const {
        int depth = 0;
        for (const auto& [id, c] : terms_)
            for (Mode m : mono(id).modes) depth = std::max(depth, -m.n16);
        return depth;
    }

private:
    void require_same_sector(const FockVector& o) const {
        if (!(sector_ == o.sector_)) throw SectorMismatch("sector mismatch in vector arithmetic");
    }

    Codeword sector_;
    std::map<MonoId, R> terms_;
};

// ---------------------------------------------------------------------------
// Clifford mode action.  a_i(n) applied from the left of a canonical
// monomial either contracts with its partner a_i(-n) or inserts at its
// canonical slot, with the fermionic sign from the modes it passes.

template <class R>
void apply_mode_term(Mode a, MonoId id, const R& coeff, FockVector<R>& out) {
    const Monomial& m = mono(id);
    Codeword d = m.sector;
    if (!mode_legal_in_sector(a, d))
        throw SectorMismatch("mode a_" + std::to_string(a.fermion) + "(" + std::to_string(a.n16) +
                             "/16) illegal for sector " + d.to_string());

    if (a.n16 > 0) {
        // annihilator: contracts with a_i(-n) if present, else kills the term
        Mode partner{a.fermion, -a.n16};
        for (size_t t = 0; t < m.modes.size(); ++t) {
            if (m.modes[t] == partner) {
                Monomial res{d, {}};
                res.modes.reserve(m.modes.size() - 1);
                for (size_t j = 0; j < m.modes.size(); ++j)
                    if (j != t) res.modes.push_back(m.modes[j]);
                R c = coeff;
                if (t & 1) c = -c;
                out.add_term(MonoPool::instance().intern(std::move(res)), c);
                return;
            }
        }
        return;
    }

    if (a.n16 == 0) {
        for (size_t t = 0; t < m.modes.size(); ++t) {
            if (m.modes[t] == a) {
                // meets its twin: a_i(0)^2 = 1/2
                Monomial res{d, {}};
                res.modes.reserve(m.modes.size() - 1);
                for (size_t j = 0; j < m.modes.size(); ++j)
                    if (j != t) res.modes.push_back(m.modes[j]);
                R c = ring_div2(coeff);
                if (t & 1) c = -c;
                out.add_term(MonoPool::instance().intern(std::move(res)), c);
                return;
            }
        }
        // falls through to insertion
    } else {
        for (Mode md : m.modes)
            if (md == a) return; // a(n)^2 = 0 for n != 0
    }

    // creator or fresh zero mode: insert at the canonical slot
    size_t slot = 0;
    while (slot < m.modes.size() && m.modes[slot] < a) ++slot;
    Monomial res{d, {}};
    res.modes.reserve(m.modes.size() + 1);
    res.modes.insert(res.modes.end(), m.modes.begin(), m.modes.begin() + slot);
    res.modes.push_back(a);
    res.modes.insert(res.modes.end(), m.modes.begin() + slot, m.modes.end());
    R c = coeff;
    if (slot & 1) c = -c;
    out.add_term(MonoPool::instance().intern(std::move(res)), c);
}

template <class R>
FockVector<R> apply_mode(Mode a, const FockVector<R>& v) {
    FockVector<R> out(v.sector());
    for (const auto& [id, c] : v.terms()) apply_mode_term(a, id, c, out);
    return out;
}

// ---------------------------------------------------------------------------
// Bilinear form: monomials are orthogonal with square length 1/2^k, k the
// number of zero modes.  Symmetric; satisfies (a(m)u, v) = (u, a(-m)v).

inline int zero_mode_count(const Monomial& m) {
    int k = 0;
    for (Mode md : m.modes)
        if (md.n16 == 0) ++k;
    return k;
}

template <class R>
R bilinear_form(const FockVector<R>& u, const FockVector<R>& v, const R& ring_hint) {
    if (!(u.sector() == v.sector())) throw SectorMismatch("bilinear form needs matching sectors");
    R acc = ring_zero(ring_hint);
    auto iu = u.terms().begin();
    auto iv = v.terms().begin();
    while (iu != u.terms().end() && iv != v.terms().end()) {
        if (iu->first < iv->first) ++iu;
        else if (iv->first < iu->first) ++iv;
        else {
            R prod = iu->second;
            prod *= iv->second;
            prod *= ring_pow2(ring_hint, -zero_mode_count(mono(iu->first)));
            acc += prod;
            ++iu;
            ++iv;
        }
    }
    return acc;
}

inline Rational bilinear_form(const FockVector<Rational>& u, const FockVector<Rational>& v) {
    return bilinear_form(u, v, Rational(0));
}

// ---------------------------------------------------------------------------
// Basis enumeration and graded dimensions.

namespace detail_fock {

// Enumerates the mode lists available to one fermion within a degree budget
// (in sixteenths): distinct modes n16 <= 0 from the sector's residue class,
// including the cost-free zero mode when twisted.
inline void fermion_blocks(bool twisted, int budget16,
                           std::vector<std::pair<std::vector<int>, int>>& out) {
    // each entry: (mode list as n16 values ascending, cost16 = sum of -n16)
    out.clear();
    std::vector<int> current;
    std::function<void(int, int)> rec = [&](int next_n16, int cost) {
        out.emplace_back(current, cost);
        for (int n16 = next_n16; cost - n16 <= budget16; n16 -= 16) {
            current.push_back(n16);
            rec(n16 - 16, cost - n16);
            current.pop_back();
        }
    };
    rec(twisted ? 0 : -8, 0);
    for (auto& [list, cost] : out) std::sort(list.begin(), list.end());
}

} // namespace detail_fock

// All canonical monomials of the sector with degree16 <= max_degree16.
inline std::vector<MonoId> enumerate_monomials_up_to(Codeword d, SixteenthInt max_degree16) {
    std::int64_t budget = max_degree16.value16 - d.weight();
    std::vector<MonoId> out;
    if (budget < 0) return out;
    int r = d.len;
    std::vector<std::vector<std::pair<std::vector<int>, int>>> blocks(r);
    for (int i = 0; i < r; ++i)
        detail_fock::fermion_blocks(d.get(i), static_cast<int>(budget), blocks[i]);

    std::vector<Mode> acc;
    std::function<void(int, int)> rec = [&](int fermion_idx, int used) {
        if (fermion_idx == r) {
            Monomial m{d, acc};
            std::sort(m.modes.begin(), m.modes.end());
            out.push_back(MonoPool::instance().intern(std::move(m)));
            return;
        }
        for (const auto& [list, cost] : blocks[fermion_idx]) {
            if (used + cost > budget) continue;
            for (int n16 : list) acc.push_back(Mode{fermion_idx + 1, n16});
            rec(fermion_idx + 1, used + cost);
            acc.resize(acc.size() - list.size());
        }
    };
    rec(0, 0);
    return out;
}

enum class ParityFilter { even, odd, both };

// Canonical monomials at exactly degree16 with the requested parity.
inline std::vector<MonoId> enumerate_monomials(Codeword d, SixteenthInt degree16,
                                               ParityFilter parity = ParityFilter::both) {
    std::vector<MonoId> all = enumerate_monomials_up_to(d, degree16);
    std::vector<MonoId> out;
    for (MonoId id : all) {
        const Monomial& m = mono(id);
        if (m.degree16() != degree16) continue;
        if (parity == ParityFilter::even && m.parity()) continue;
        if (parity == ParityFilter::odd && !m.parity()) continue;
        out.push_back(id);
    }
    std::sort(out.begin(), out.end(),
              [](MonoId a, MonoId b) { return monomial_content_less(mono(a), mono(b)); });
    return out;
}

inline std::int64_t graded_dimension(Codeword d, ParityFilter parity, SixteenthInt degree16) {
    if (degree16.value16 < d.weight()) return 0;
    return static_cast<std::int64_t>(enumerate_monomials(d, degree16, parity).size());
}

// ---------------------------------------------------------------------------
// tau(d) eigenvalue: (-1)^(number of modes with fermion index in supp(d)).

inline int tau_eigenvalue(Codeword d, const Monomial& m) {
    int count = 0;
    for (Mode md : m.modes)
        if (d.get(md.fermion - 1)) ++count;
    return (count & 1) ? -1 : 1;
}

inline int tau_parity(Codeword d, const Monomial& m) {
    return tau_eigenvalue(d, m) == 1 ? 0 : 1;
}

} // namespace fvoa

#pragma once

// GF(2) linear codes in Z_2^r, r <= 64: duals, evenness classes, the
// support-restricted subcode K(d), maximal (doubly even) self-orthogonal
// subcodes E(d), and coset enumeration.  Codes are stored as RREF generator
// matrices so equality is representation equality.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace fvoa {

struct TooLarge : std::domain_error {
    explicit TooLarge(const std::string& what) : std::domain_error(what) {}
};

// ---------------------------------------------------------------------------
// Codeword: bit i (0-based) is coordinate i+1 of Z_2^r.  Lexicographic order
// compares coordinates left to right, i.e. "0..." < "1...".

struct Codeword {
    std::uint64_t bits = 0;
    int len = 0;

    Codeword() = default;
    Codeword(std::uint64_t b, int r) : bits(b), len(r) {
        if (r < 0 || r > 64) throw std::domain_error("codeword length out of range");
        if (r < 64) bits &= (1ull << r) - 1;
    }

    static Codeword zero(int r) { return Codeword(0, r); }
    static Codeword ones(int r) { return Codeword(r == 64 ? ~0ull : (1ull << r) - 1, r); }
    static Codeword from_string(const std::string& s) {
        Codeword w(0, static_cast<int>(s.size()));
        for (size_t i = 0; i < s.size(); ++i) {
            if (s[i] == '1') w.bits |= 1ull << i;
            else if (s[i] != '0') throw std::domain_error("codeword characters must be 0/1");
        }
        return w;
    }

    int weight() const { return std::popcount(bits); }
    bool get(int i) const { return (bits >> i) & 1; } // 0-based coordinate
    bool supported_in(Codeword d) const { return (bits & ~d.bits) == 0; }
    int dot(Codeword o) const { return std::popcount(bits & o.bits) & 1; }

    friend Codeword operator+(Codeword a, Codeword b) {
        if (a.len != b.len) throw std::domain_error("codeword length mismatch");
        return Codeword(a.bits ^ b.bits, a.len);
    }
    friend bool operator==(Codeword a, Codeword b) { return a.len == b.len && a.bits == b.bits; }
    friend bool operator!=(Codeword a, Codeword b) { return !(a == b); }

    // "0..." < "1...": first differing coordinate decides.
    friend bool lex_less(Codeword a, Codeword b) {
        std::uint64_t diff = a.bits ^ b.bits;
        if (!diff) return false;
        int pos = std::countr_zero(diff);
        return !((a.bits >> pos) & 1);
    }

    std::string to_string() const {
        std::string s(len, '0');
        for (int i = 0; i < len; ++i)
            if (get(i)) s[i] = '1';
        return s;
    }
};

// ---------------------------------------------------------------------------

enum class EvennessClass { none, even, doubly_even, triply_even };

inline std::string to_string(EvennessClass e) {
    switch (e) {
    case EvennessClass::none: return "none";
    case EvennessClass::even: return "even";
    case EvennessClass::doubly_even: return "doubly_even";
    case EvennessClass::triply_even: return "triply_even";
    }
    return {};
}

class BinaryCode {
public:
    explicit BinaryCode(int r) : r_(r) {
        if (r < 1 || r > 64) throw std::domain_error("ambient length out of range");
    }

    BinaryCode(int r, const std::vector<Codeword>& generators) : BinaryCode(r) {
        std::vector<std::uint64_t> rows;
        rows.reserve(generators.size());
        for (const Codeword& g : generators) {
            if (g.len != r) throw std::domain_error("generator length mismatch");
            rows.push_back(g.bits);
        }
        rows_ = rref(rows);
    }

    int length() const { return r_; }
    int dim() const { return static_cast<int>(rows_.size()); }
    std::uint64_t size() const { return 1ull << rows_.size(); }

    const std::vector<std::uint64_t>& rows() const { return rows_; }
    Codeword generator(int i) const { return Codeword(rows_[i], r_); }

    bool contains(Codeword w) const {
        if (w.len != r_) return false;
        return canonical_coset_label(w).bits == 0;
    }

    // Reduces w modulo the code: clears every pivot position.  Words share a
    // coset iff their labels agree.
    Codeword canonical_coset_label(Codeword w) const {
        std::uint64_t x = w.bits;
        for (std::uint64_t row : rows_) {
            int p = std::countr_zero(row);
            if ((x >> p) & 1) x ^= row;
        }
        return Codeword(x, r_);
    }

    // All 2^k codewords in lexicographic order.
    std::vector<Codeword> codewords() const {
        if (dim() > 20) throw TooLarge("codeword enumeration limited to dimension 20");
        std::vector<Codeword> out;
        out.reserve(size());
        for (std::uint64_t m = 0; m < size(); ++m) {
            std::uint64_t w = 0;
            for (size_t j = 0; j < rows_.size(); ++j)
                if ((m >> j) & 1) w ^= rows_[j];
            out.emplace_back(w, r_);
        }
        std::sort(out.begin(), out.end(), [](Codeword a, Codeword b) { return lex_less(a, b); });
        return out;
    }

    friend bool operator==(const BinaryCode& a, const BinaryCode& b) {
        return a.r_ == b.r_ && a.rows_ == b.rows_;
    }
    friend bool operator!=(const BinaryCode& a, const BinaryCode& b) { return !(a == b); }

private:
    static std::vector<std::uint64_t> rref(std::vector<std::uint64_t> rows) {
        std::vector<std::uint64_t> basis; // basis[i] has pivot at its lowest set bit, pivots strictly increasing after sort
        for (std::uint64_t row : rows) {
            for (std::uint64_t b : basis) {
                int p = std::countr_zero(b);
                if ((row >> p) & 1) row ^= b;
            }
            if (row) basis.push_back(row);
        }
        // back-substitute: clear pivot columns from the other rows
        for (size_t i = 0; i < basis.size(); ++i) {
            int p = std::countr_zero(basis[i]);
            for (size_t j = 0; j < basis.size(); ++j)
                if (j != i && ((basis[j] >> p) & 1)) basis[j] ^= basis[i];
        }
        std::sort(basis.begin(), basis.end(),
                  [](std::uint64_t a, std::uint64_t b) { return std::countr_zero(a) < std::countr_zero(b); });
        return basis;
    }

    int r_;
    std::vector<std::uint64_t> rows_;
};

// ---------------------------------------------------------------------------
// Operations

// C^perp = {x : x.c = 0 for all c in C}; dim C + dim C^perp = r.
inline BinaryCode dual_code(const BinaryCode& C) {
    int r = C.length();
    // null space of the generator matrix: pivot coordinates are determined by
    // the free ones through the RREF rows.
    std::vector<int> pivots;
    for (std::uint64_t row : C.rows()) pivots.push_back(std::countr_zero(row));
    std::vector<Codeword> gens;
    for (int f = 0; f < r; ++f) {
        if (std::find(pivots.begin(), pivots.end(), f) != pivots.end()) continue;
        std::uint64_t w = 1ull << f;
        for (size_t i = 0; i < C.rows().size(); ++i)
            if ((C.rows()[i] >> f) & 1) w |= 1ull << pivots[i];
        gens.emplace_back(w, r);
    }
    return BinaryCode(r, gens);
}

// Strongest wt = 0 mod 2 / 4 / 8 class satisfied by every codeword.  Uses the
// generator criteria (exact); full enumeration available when 2^k <= 2^20.
inline EvennessClass evenness_class(const BinaryCode& C, bool force_enumeration = false) {
    if (force_enumeration) {
        if (C.dim() > 20) throw TooLarge("exact enumeration requested with dimension > 20");
        EvennessClass best = EvennessClass::triply_even;
        for (const Codeword& w : C.codewords()) {
            int wt = w.weight();
            if (wt % 2) return EvennessClass::none;
            if (wt % 4 && best >= EvennessClass::doubly_even) best = EvennessClass::even;
            if (wt % 8 && best >= EvennessClass::triply_even)
                best = (wt % 4) ? EvennessClass::even : EvennessClass::doubly_even;
        }
        return best;
    }
    const auto& rows = C.rows();
    auto wt = [](std::uint64_t x) { return std::popcount(x); };
    bool even = true, doubly = true, triply = true;
    for (size_t i = 0; i < rows.size(); ++i) {
        if (wt(rows[i]) % 2) even = false;
        if (wt(rows[i]) % 4) doubly = false;
        if (wt(rows[i]) % 8) triply = false;
    }
    // closure criteria: wt(a+b) = wt a + wt b - 2|a&b|
    for (size_t i = 0; i < rows.size() && (doubly || triply); ++i)
        for (size_t j = i + 1; j < rows.size(); ++j) {
            int inter = wt(rows[i] & rows[j]);
            if (inter % 2) doubly = false;
            if (inter % 4) triply = false;
        }
    for (size_t i = 0; i < rows.size() && triply; ++i)
        for (size_t j = i + 1; j < rows.size() && triply; ++j)
            for (size_t k = j + 1; k < rows.size(); ++k)
                if (wt(rows[i] & rows[j] & rows[k]) % 2) { triply = false; break; }
    if (!even) return EvennessClass::none;
    if (doubly && triply) return EvennessClass::triply_even;
    if (doubly) return EvennessClass::doubly_even;
    return EvennessClass::even;
}

// K(d): the subcode of C supported inside supp(d).
inline BinaryCode restricted_subcode(const BinaryCode& C, Codeword d) {
    if (d.len != C.length()) throw std::domain_error("twist length mismatch");
    std::vector<Codeword> gens;
    for (const Codeword& c : C.codewords())
        if (c.supported_in(d)) gens.push_back(c);
    return BinaryCode(C.length(), gens);
}

// E(d): maximal subcode of K with E in E^perp, all weights = 0 mod 4 (or
// merely self-orthogonal when doubly_even = false).  Deterministic greedy
// augmentation over the lexicographically ordered codeword list.
inline BinaryCode maximal_self_orthogonal_subcode(const BinaryCode& K, bool doubly_even = true) {
    std::vector<Codeword> picked;
    BinaryCode E(K.length(), picked);
    for (const Codeword& c : K.codewords()) {
        if (c.weight() == 0) continue;
        if (doubly_even && c.weight() % 4 != 0) continue;
        if (!doubly_even && c.weight() % 2 != 0) continue;
        bool orth = true;
        for (const Codeword& g : picked)
            if (c.dot(g)) { orth = false; break; }
        if (!orth || E.contains(c)) continue;
        picked.push_back(c);
        E = BinaryCode(K.length(), picked);
    }
    return E;
}

inline BinaryCode maximal_doubly_even_self_orthogonal(const BinaryCode& K) {
    return maximal_self_orthogonal_subcode(K, true);
}

// One representative per coset of C in Z_2^r, each lexicographically least in
// its coset, returned in lexicographic order.
inline std::vector<Codeword> coset_representatives(int r, const BinaryCode& C) {
    if (r != C.length()) throw std::domain_error("ambient length mismatch");
    if (r - C.dim() > 20) throw TooLarge("coset enumeration limited to 2^20 cosets");
    if (C.dim() > 20) throw TooLarge("coset minimization limited to 2^20 codewords");
    std::vector<Codeword> words = C.codewords();
    std::vector<int> pivots;
    for (std::uint64_t row : C.rows()) pivots.push_back(std::countr_zero(row));
    std::vector<int> free_pos;
    for (int i = 0; i < r; ++i)
        if (std::find(pivots.begin(), pivots.end(), i) == pivots.end()) free_pos.push_back(i);
    std::vector<Codeword> reps;
    reps.reserve(1ull << free_pos.size());
    for (std::uint64_t m = 0; m < (1ull << free_pos.size()); ++m) {
        std::uint64_t t = 0;
        for (size_t j = 0; j < free_pos.size(); ++j)
            if ((m >> j) & 1) t |= 1ull << free_pos[j];
        Codeword best(t, r);
        for (const Codeword& c : words) {
            Codeword shifted(t ^ c.bits, r);
            if (lex_less(shifted, best)) best = shifted;
        }
        reps.push_back(best);
    }
    std::sort(reps.begin(), reps.end(), [](Codeword a, Codeword b) { return lex_less(a, b); });
    return reps;
}

// ---------------------------------------------------------------------------
// Common example codes

inline BinaryCode repetition_code(int r) {
    return BinaryCode(r, {Codeword::ones(r)});
}

// Extended Hamming [8,4,4]: doubly even and self-dual.
inline BinaryCode extended_hamming_8_4() {
    return BinaryCode(8, {
                             Codeword::from_string("11110000"),
                             Codeword::from_string("11001100"),
                             Codeword::from_string("10101010"),
                             Codeword::from_string("11111111"),
                         });
}

} // namespace fvoa

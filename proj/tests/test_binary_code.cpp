#include <catch2/catch_amalgamated.hpp>

#include <fvoa/binary_code.hpp>

#include <random>
#include <set>

using namespace fvoa;

namespace {

// Brute-force dual over all 2^r words; oracle for dual_code.
std::set<std::uint64_t> brute_dual(const BinaryCode& C) {
    std::set<std::uint64_t> out;
    auto words = C.codewords();
    for (std::uint64_t x = 0; x < (1ull << C.length()); ++x) {
        bool ok = true;
        for (const Codeword& c : words)
            if (Codeword(x, C.length()).dot(c)) { ok = false; break; }
        if (ok) out.insert(x);
    }
    return out;
}

std::set<std::uint64_t> word_set(const BinaryCode& C) {
    std::set<std::uint64_t> out;
    for (const Codeword& c : C.codewords()) out.insert(c.bits);
    return out;
}

} // namespace

TEST_CASE("dual code examples") {
    BinaryCode zero3(3, {});
    CHECK(dual_code(zero3).dim() == 3);
    CHECK(word_set(dual_code(zero3)) == brute_dual(zero3));

    BinaryCode rep4 = repetition_code(4);
    BinaryCode d = dual_code(rep4);
    CHECK(d.dim() == 3);
    CHECK(word_set(d) == brute_dual(rep4));
    for (const Codeword& c : d.codewords()) CHECK(c.weight() % 2 == 0);

    BinaryCode h = extended_hamming_8_4();
    CHECK(h.dim() == 4);
    CHECK(dual_code(h) == h);
    CHECK(word_set(dual_code(h)) == brute_dual(h));
}

TEST_CASE("dual is involutive on random codes") {
    std::mt19937_64 rng(424242);
    for (int trial = 0; trial < 200; ++trial) {
        int r = 1 + static_cast<int>(rng() % 12);
        int ngen = static_cast<int>(rng() % 5);
        std::vector<Codeword> gens;
        for (int i = 0; i < ngen; ++i) gens.emplace_back(rng(), r);
        BinaryCode C(r, gens);
        BinaryCode D = dual_code(C);
        CHECK(C.dim() + D.dim() == r);
        CHECK(dual_code(D) == C);
    }
}

TEST_CASE("evenness classes") {
    CHECK(evenness_class(repetition_code(8)) == EvennessClass::triply_even);
    CHECK(evenness_class(extended_hamming_8_4()) == EvennessClass::doubly_even);
    CHECK(evenness_class(repetition_code(2)) == EvennessClass::even);
    CHECK(evenness_class(repetition_code(3)) == EvennessClass::none);
    CHECK(evenness_class(repetition_code(4)) == EvennessClass::doubly_even);

    // generator criteria agree with enumeration on random codes
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 300; ++trial) {
        int r = 2 + static_cast<int>(rng() % 11);
        std::vector<Codeword> gens;
        for (int i = 0, n = static_cast<int>(rng() % 4); i < n; ++i) gens.emplace_back(rng(), r);
        BinaryCode C(r, gens);
        CHECK(evenness_class(C) == evenness_class(C, true));
    }
}

TEST_CASE("restricted subcode K(d)") {
    BinaryCode rep4 = repetition_code(4);
    CHECK(restricted_subcode(rep4, Codeword::from_string("1111")) == rep4);
    CHECK(restricted_subcode(rep4, Codeword::from_string("1100")).dim() == 0);
    BinaryCode h = extended_hamming_8_4();
    CHECK(restricted_subcode(h, Codeword::ones(8)) == h);
}

TEST_CASE("maximal doubly even self-orthogonal subcode") {
    BinaryCode rep4 = repetition_code(4);
    CHECK(maximal_doubly_even_self_orthogonal(rep4) == rep4);

    BinaryCode rep2 = repetition_code(2);
    CHECK(maximal_doubly_even_self_orthogonal(rep2).dim() == 0);

    BinaryCode h = extended_hamming_8_4();
    CHECK(maximal_doubly_even_self_orthogonal(h) == h);

    // weaker flag: merely self-orthogonal keeps the weight-2 word of rep2
    CHECK(maximal_self_orthogonal_subcode(rep2, false) == rep2);
}

TEST_CASE("E(d) output properties on random codes") {
    std::mt19937_64 rng(31337);
    for (int trial = 0; trial < 100; ++trial) {
        int r = 2 + static_cast<int>(rng() % 9);
        std::vector<Codeword> gens;
        for (int i = 0, n = static_cast<int>(rng() % 4); i < n; ++i) gens.emplace_back(rng(), r);
        BinaryCode K(r, gens);
        BinaryCode E = maximal_doubly_even_self_orthogonal(K);
        auto ewords = E.codewords();
        for (const Codeword& c : ewords) {
            REQUIRE(c.weight() % 4 == 0);
            for (const Codeword& g : ewords) REQUIRE(c.dot(g) == 0);
            REQUIRE(K.contains(c));
        }
        // no single codeword of K \ E can be added
        for (const Codeword& c : K.codewords()) {
            if (E.contains(c) || c.weight() % 4 != 0) continue;
            bool orth = true;
            for (const Codeword& g : ewords)
                if (c.dot(g)) { orth = false; break; }
            REQUIRE(!orth);
        }
    }
}

TEST_CASE("coset representatives") {
    BinaryCode rep2 = repetition_code(2);
    auto reps = coset_representatives(2, rep2);
    REQUIRE(reps.size() == 2);
    CHECK(reps[0].to_string() == "00");
    CHECK(reps[1].to_string() == "01");

    CHECK(coset_representatives(4, repetition_code(4)).size() == 8);
    auto hreps = coset_representatives(8, extended_hamming_8_4());
    CHECK(hreps.size() == 16);

    // one per coset, least in its coset
    BinaryCode h = extended_hamming_8_4();
    std::set<std::uint64_t> labels;
    for (const Codeword& x : hreps) {
        labels.insert(h.canonical_coset_label(x).bits);
        for (const Codeword& c : h.codewords())
            CHECK(!lex_less(Codeword(x.bits ^ c.bits, 8), x));
    }
    CHECK(labels.size() == 16);
}

TEST_CASE("containment C in D-perp is checkable") {
    BinaryCode C = extended_hamming_8_4();
    BinaryCode D(8, {Codeword::ones(8)});
    BinaryCode Dperp = dual_code(D);
    for (const Codeword& c : C.codewords()) {
        CHECK(Dperp.contains(c));
        for (const Codeword& d : D.codewords()) CHECK(c.dot(d) == 0);
    }
}

TEST_CASE("code equality is representation equality") {
    BinaryCode a(4, {Codeword::from_string("1111"), Codeword::from_string("0000")});
    BinaryCode b(4, {Codeword::from_string("1111"), Codeword::from_string("1111")});
    CHECK(a == b);
}

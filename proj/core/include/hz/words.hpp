#pragma once

#include "hz/group.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace hz {

enum class Alphabet { G, GQ };
enum class GroupTag { Gamma, GammaTilde };

/// Letter over Gen_G or Gen_{G^Q}: optional Q prefix, base index k, and a
/// power exponent (only parabolic bases 1 and q-1 carry exponents > 1).
struct Letter {
    bool qflag = false;
    int base = 0;
    int exp = 1;

    bool operator==(const Letter& o) const = default;
    // Lexicographic order (q_flag, base, exponent), ascending.
    auto operator<=>(const Letter& o) const = default;
};

struct Word {
    std::vector<Letter> letters;

    int length() const { return static_cast<int>(letters.size()); }
    bool operator==(const Word& o) const = default;
    auto operator<=>(const Word& o) const = default;
    std::string str() const;
};

/// B-set membership tags of a reduced word, by last-letter type and
/// whether the first letter is an unflagged parabolic power. B1 and B4
/// are exactly the regular words.
struct BTags {
    bool b1 = false, b2 = false, b3 = false, b4 = false;
};

bool letter_valid(const HeckeGroup& G, Alphabet a, const Letter& l);
void check_word(const HeckeGroup& G, Alphabet a, const Word& w);

/// Exact group element of a letter / word.
GroupElement letter_element(const HeckeGroup& G, const Letter& l);
GroupElement word_element(const HeckeGroup& G, const Word& w);

/// Embedded 2x2 double product, for norms and pruning.
std::array<double, 4> word_embed(const HeckeGroup& G, const Word& w);

/// Norm of the word's element from the embedded trace (det via flag count).
double word_norm(const HeckeGroup& G, const Word& w);
int word_det(const Word& w); // (-1)^{#Q-flags}

bool is_reduced(const HeckeGroup& G, const Word& w, Alphabet a);
bool is_regular(const HeckeGroup& G, const Word& w, Alphabet a);
BTags b_tags(const HeckeGroup& G, const Word& w);

/// eps = number of Q-flagged letters; k = number of letters with base m
/// (only meaningful for even q; 0 when base m is not a finite-range base).
std::pair<int, int> eps_and_k(const HeckeGroup& G, const Word& w);

struct ConjClassRecord {
    Word canonical_word;
    GroupElement element; // element of the canonical word
    double N = 0;
    int ell = 0;
    int n = 1;    // primitive-power index
    int det = 1;
    int eps = 0;
    int kcount = 0;
    GroupTag group_tag = GroupTag::Gamma;
    bool boundary = false; // even q, GammaTilde: all letters over {g_m, Qg_m}
};

/// Canonical representative of the conjugacy class of a regular word:
/// lexicographic minimum over cyclic rotations, and for even q in the
/// extended group also over the 2^k Q-flip orbit.
ConjClassRecord canonical_class(const HeckeGroup& G, const Word& w, GroupTag tag);

struct WordCaps {
    int max_exponent = 0; // 0: derive from norm cutoff
    int max_length = 0;   // 0: derive from norm cutoff
    double max_norm = 0;  // 0: no norm filter
};

/// Streams every reduced word of exact length n over the alphabet with
/// exponents <= caps.max_exponent, pruning prefixes certified to exceed
/// the norm cutoff. Sink receives the word and its B-tags.
void enumerate_reduced_words(const HeckeGroup& G, Alphabet a, int n, const WordCaps& caps,
                             const std::function<void(const Word&, const BTags&)>& sink);

struct ClassList {
    std::vector<ConjClassRecord> classes; // sorted by (N, canonical word)
    bool certified = true;                // caps certified sufficient for the cutoff
    double cutoff = 0;
};

/// Complete list of hyperbolic conjugacy classes with N <= cutoff for the
/// group (Gamma via Gen_G, GammaTilde via Gen_{G^Q}). Caps with value 0
/// are derived from the cutoff via the certified bounds; explicit smaller
/// caps drop the certification flag.
ClassList enumerate_conj_classes(const HeckeGroup& G, GroupTag tag, double cutoff,
                                 WordCaps caps = {});

/// Certified caps: any regular word containing an exponent > exponent_cap
/// or longer than length_cap has norm > cutoff.
int certified_exponent_cap(const HeckeGroup& G, double cutoff);
int certified_length_cap(const HeckeGroup& G, Alphabet a, double cutoff);

/// Coding translation for odd q: Gen_G word -> Gen_{G^Q} word with
/// product(out) = product(in) . Q^delta, delta = parity of lower-half
/// letters. Throws for even q.
struct Translation {
    Word word;
    int delta = 0;
};
Translation translate_coding(const HeckeGroup& G, const Word& g_word);

} // namespace hz

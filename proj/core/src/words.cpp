#include "hz/words.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

namespace hz {

namespace {

using Mat2 = std::array<double, 4>;

Mat2 mul(const Mat2& A, const Mat2& B) {
    return {A[0] * B[0] + A[1] * B[2], A[0] * B[1] + A[1] * B[3],
            A[2] * B[0] + A[3] * B[2], A[2] * B[1] + A[3] * B[3]};
}

// Sign-twisted letter matrix J M J (projective sign resolved): entrywise
// nonnegative for every alphabet letter, so partial products stay
// nonnegative and row/column sums give certified norm lower bounds.
Mat2 twisted_letter(const HeckeGroup& G, const Letter& l) {
    double lam = G.field->lambda();
    Mat2 m;
    if (l.base == 1) {
        m = {1.0, l.exp * lam, 0.0, 1.0};
    } else if (l.base == G.q - 1) {
        m = {1.0, 0.0, l.exp * lam, 1.0};
    } else {
        auto e = G.gen(l.base).embed();
        m = {std::fabs(e[0]), std::fabs(e[1]), std::fabs(e[2]), std::fabs(e[3])};
    }
    if (l.qflag) std::swap(m[0], m[2]), std::swap(m[1], m[3]); // row swap by Q
    return m;
}

double min_rowsum(const Mat2& A) { return std::min(A[0] + A[1], A[2] + A[3]); }
double min_colsum(const Mat2& A) { return std::min(A[0] + A[2], A[1] + A[3]); }
double prune_bound(const Mat2& A) { return std::max(min_rowsum(A), min_colsum(A)); }

double norm_from_twisted(const Mat2& A, int det) {
    double t = A[0] + A[3];
    double r = det == 1 ? (t + std::sqrt(std::max(t * t - 4.0, 0.0))) / 2.0
                        : (t + std::sqrt(t * t + 4.0)) / 2.0;
    return r * r;
}

bool pair_allowed(const Alphabet a, int q, const Letter& prev, const Letter& next) {
    if (a == Alphabet::G)
        return !((prev.base == 1 && next.base == 1) ||
                 (prev.base == q - 1 && next.base == q - 1));
    // GQ: the forbidden pairs are g_{q-1}^a g_{q-1}^b and Q g_{q-1}^a g_{q-1}^b;
    // the second letter of a forbidden pair never carries Q.
    return !(prev.base == q - 1 && next.base == q - 1 && !next.qflag);
}

struct LetterType {
    bool qflag;
    int base;
    bool parabolic;
};

std::vector<LetterType> alphabet_types(const HeckeGroup& G, Alphabet a) {
    std::vector<LetterType> types;
    if (a == Alphabet::G) {
        types.push_back({false, 1, true});
        for (int k = 2; k <= G.q - 2; ++k) types.push_back({false, k, false});
        types.push_back({false, G.q - 1, true});
    } else {
        for (bool flag : {false, true}) {
            for (int k = G.m; k <= G.q - 2; ++k) types.push_back({flag, k, false});
            types.push_back({flag, G.q - 1, true});
        }
        std::sort(types.begin(), types.end(), [](const LetterType& x, const LetterType& y) {
            return std::tie(x.qflag, x.base) < std::tie(y.qflag, y.base);
        });
    }
    return types;
}

} // namespace

std::string Word::str() const {
    std::ostringstream os;
    for (size_t i = 0; i < letters.size(); ++i) {
        if (i) os << ".";
        const Letter& l = letters[i];
        if (l.qflag) os << "Q";
        os << "g" << l.base;
        if (l.exp > 1) os << "^" << l.exp;
    }
    return os.str();
}

bool letter_valid(const HeckeGroup& G, Alphabet a, const Letter& l) {
    if (l.exp < 1) return false;
    if (a == Alphabet::G) {
        if (l.qflag) return false;
        if (l.base == 1 || l.base == G.q - 1) return true;
        return l.base >= 2 && l.base <= G.q - 2 && l.exp == 1;
    }
    if (l.base == G.q - 1) return true;
    return l.base >= G.m && l.base <= G.q - 2 && l.exp == 1;
}

void check_word(const HeckeGroup& G, Alphabet a, const Word& w) {
    if (w.letters.empty()) throw std::invalid_argument("word: empty");
    for (const Letter& l : w.letters)
        if (!letter_valid(G, a, l))
            throw std::invalid_argument("word: letter invalid for alphabet: " + w.str());
}

GroupElement letter_element(const HeckeGroup& G, const Letter& l) {
    GroupElement e = G.gen(l.base).pow(l.exp);
    return l.qflag ? G.Q * e : e;
}

GroupElement word_element(const HeckeGroup& G, const Word& w) {
    GroupElement acc = letter_element(G, w.letters.front());
    for (size_t i = 1; i < w.letters.size(); ++i)
        acc = acc * letter_element(G, w.letters[i]);
    return acc;
}

std::array<double, 4> word_embed(const HeckeGroup& G, const Word& w) {
    double lam = G.field->lambda();
    auto letter_mat = [&](const Letter& l) -> Mat2 {
        Mat2 m;
        if (l.base == 1) m = {1.0, -l.exp * lam, 0.0, 1.0};
        else if (l.base == G.q - 1) m = {1.0, 0.0, -l.exp * lam, 1.0};
        else m = G.gen(l.base).embed();
        if (l.qflag) std::swap(m[0], m[2]), std::swap(m[1], m[3]);
        return m;
    };
    Mat2 acc = letter_mat(w.letters.front());
    for (size_t i = 1; i < w.letters.size(); ++i) acc = mul(acc, letter_mat(w.letters[i]));
    return acc;
}

int word_det(const Word& w) {
    int eps = 0;
    for (const Letter& l : w.letters) eps += l.qflag ? 1 : 0;
    return eps % 2 == 0 ? 1 : -1;
}

double word_norm(const HeckeGroup& G, const Word& w) {
    Mat2 acc = twisted_letter(G, w.letters.front());
    for (size_t i = 1; i < w.letters.size(); ++i)
        acc = mul(acc, twisted_letter(G, w.letters[i]));
    return norm_from_twisted(acc, word_det(w));
}

bool is_reduced(const HeckeGroup& G, const Word& w, Alphabet a) {
    check_word(G, a, w);
    for (size_t i = 0; i + 1 < w.letters.size(); ++i)
        if (!pair_allowed(a, G.q, w.letters[i], w.letters[i + 1])) return false;
    return true;
}

bool is_regular(const HeckeGroup& G, const Word& w, Alphabet a) {
    if (!is_reduced(G, w, a)) return false;
    return pair_allowed(a, G.q, w.letters.back(), w.letters.front());
}

BTags b_tags(const HeckeGroup& G, const Word& w) {
    BTags t;
    const Letter& last = w.letters.back();
    const Letter& first = w.letters.front();
    bool ends_parabolic = last.base == G.q - 1;
    bool starts_plain_parabolic = first.base == G.q - 1 && !first.qflag;
    t.b3 = ends_parabolic;
    t.b4 = !ends_parabolic;
    t.b1 = t.b3 && !starts_plain_parabolic;
    t.b2 = t.b4 && !starts_plain_parabolic;
    return t;
}

std::pair<int, int> eps_and_k(const HeckeGroup& G, const Word& w) {
    int eps = 0, k = 0;
    bool m_is_finite = G.m <= G.q - 2;
    for (const Letter& l : w.letters) {
        if (l.qflag) ++eps;
        if (m_is_finite && l.base == G.m) ++k;
    }
    return {eps, k};
}

namespace {

Word rotate(const Word& w, int r) {
    Word out;
    int n = w.length();
    out.letters.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) out.letters.push_back(w.letters[static_cast<size_t>((i + r) % n)]);
    return out;
}

// Q-flip orbit (even q, extended group): at each position carrying base m,
// toggle its Q flag together with the flag of the cyclic successor.
std::set<Word> flip_orbit(const HeckeGroup& G, const Word& w) {
    std::set<Word> seen{w};
    std::vector<Word> todo{w};
    while (!todo.empty()) {
        Word cur = todo.back();
        todo.pop_back();
        int n = cur.length();
        for (int p = 0; p < n; ++p) {
            if (cur.letters[static_cast<size_t>(p)].base != G.m) continue;
            Word next = cur;
            next.letters[static_cast<size_t>(p)].qflag ^= true;
            next.letters[static_cast<size_t>((p + 1) % n)].qflag ^= true;
            if (seen.insert(next).second) todo.push_back(next);
        }
    }
    return seen;
}

struct CanonInfo {
    Word canon;
    int n = 1;
    bool boundary = false;
};

CanonInfo canonical_info(const HeckeGroup& G, const Word& w, GroupTag tag) {
    CanonInfo info;
    int len = w.length();
    bool use_flips = tag == GroupTag::GammaTilde && G.q_even;

    info.boundary = false;
    if (tag == GroupTag::GammaTilde && G.q_even) {
        info.boundary = std::all_of(w.letters.begin(), w.letters.end(),
                                    [&](const Letter& l) { return l.base == G.m; });
    }

    if (!use_flips) {
        info.canon = w;
        for (int r = 1; r < len; ++r) info.canon = std::min(info.canon, rotate(w, r));
        int period = len;
        for (int p = 1; p < len; ++p) {
            if (len % p != 0) continue;
            if (rotate(info.canon, p) == info.canon) { period = p; break; }
        }
        info.n = len / period;
        return info;
    }

    std::set<Word> orbit = flip_orbit(G, w);
    Word canon = *orbit.begin();
    for (const Word& f : orbit)
        for (int r = 0; r < len; ++r) canon = std::min(canon, rotate(f, r));
    info.canon = canon;

    if (info.boundary) {
        // <g_m, Qg_m>-words: det +1 classes are [g_m^len]; det -1 classes
        // [Q g_m^len] have primitive root g_m^{len/j} Q with j the largest
        // odd divisor of len.
        if (word_det(w) == 1) {
            info.n = len;
        } else {
            int j = len;
            while (j % 2 == 0) j /= 2;
            info.n = j;
        }
        return info;
    }
    std::set<Word> canon_orbit = flip_orbit(G, canon);
    int count = 0;
    for (int r = 0; r < len; ++r)
        if (canon_orbit.count(rotate(canon, r))) ++count;
    info.n = count;
    return info;
}

} // namespace

ConjClassRecord canonical_class(const HeckeGroup& G, const Word& w, GroupTag tag) {
    Alphabet a = tag == GroupTag::Gamma ? Alphabet::G : Alphabet::GQ;
    if (!is_regular(G, w, a))
        throw std::invalid_argument("canonical_class: word not regular: " + w.str());

    CanonInfo ci = canonical_info(G, w, tag);
    ConjClassRecord rec;
    rec.canonical_word = ci.canon;
    rec.element = word_element(G, ci.canon);
    rec.det = word_det(ci.canon);
    rec.N = word_norm(G, ci.canon);
    rec.ell = ci.canon.length();
    rec.n = ci.n;
    auto [eps, k] = eps_and_k(G, ci.canon);
    rec.eps = eps;
    rec.kcount = k;
    rec.group_tag = tag;
    rec.boundary = ci.boundary;
    if (rec.element.classify() != ElementClass::hyperbolic)
        throw std::logic_error("canonical_class: regular word not hyperbolic: " + w.str());
    return rec;
}

int certified_exponent_cap(const HeckeGroup& G, double cutoff) {
    // Any regular word containing exponent e satisfies |tr| >= e*lambda, so
    // N >= (e lambda)^2 / 4.
    double lam = G.field->lambda();
    return static_cast<int>(std::ceil(2.0 * std::sqrt(cutoff) / lam)) + 1;
}

int certified_length_cap(const HeckeGroup& G, Alphabet a, double cutoff) {
    // Pairwise min-rowsum bound: N >= rho2^(2*floor(len/2)) with rho2 the
    // smallest min-rowsum over allowed letter pairs at exponent 1.
    auto types = alphabet_types(G, a);
    double rho2 = std::numeric_limits<double>::infinity();
    for (const auto& t1 : types) {
        for (const auto& t2 : types) {
            Letter l1{t1.qflag, t1.base, 1}, l2{t2.qflag, t2.base, 1};
            if (!pair_allowed(a, G.q, l1, l2)) continue;
            Mat2 P = mul(twisted_letter(G, l1), twisted_letter(G, l2));
            rho2 = std::min(rho2, min_rowsum(P));
        }
    }
    if (!(rho2 > 1.0)) throw std::logic_error("length cap: pair bound not expanding");
    int half = static_cast<int>(std::floor(std::log(std::sqrt(cutoff)) / std::log(rho2))) + 1;
    return 2 * half + 2;
}

namespace {

struct DfsConfig {
    const HeckeGroup* G;
    Alphabet alphabet;
    std::vector<LetterType> types;
    int exp_cap = 1;
    int len_cap = 1;
    double sqrt_cutoff = 0; // 0: no pruning
    bool exact_length = false;
    int target_length = 0;
    std::function<void(const Word&, const Mat2&, int)> emit; // word, twisted, eps
};

void dfs(DfsConfig& cfg, Word& w, const Mat2& acc, int eps) {
    int len = w.length();
    if (len > 0) {
        if (!cfg.exact_length || len == cfg.target_length) cfg.emit(w, acc, eps);
        if (cfg.exact_length && len == cfg.target_length) return;
    }
    if (len >= cfg.len_cap) return;
    for (const auto& t : cfg.types) {
        Letter l{t.qflag, t.base, 1};
        if (len > 0 && !pair_allowed(cfg.alphabet, cfg.G->q, w.letters.back(), l)) continue;
        int emax = t.parabolic ? cfg.exp_cap : 1;
        for (int e = 1; e <= emax; ++e) {
            l.exp = e;
            Mat2 child = len == 0 ? twisted_letter(*cfg.G, l)
                                  : mul(acc, twisted_letter(*cfg.G, l));
            if (cfg.sqrt_cutoff > 0 && prune_bound(child) > cfg.sqrt_cutoff * (1 + 1e-9))
                break; // bound monotone in the exponent and under extension
            w.letters.push_back(l);
            dfs(cfg, w, child, eps + (l.qflag ? 1 : 0));
            w.letters.pop_back();
        }
    }
}

} // namespace

void enumerate_reduced_words(const HeckeGroup& G, Alphabet a, int n, const WordCaps& caps,
                             const std::function<void(const Word&, const BTags&)>& sink) {
    if (n < 1) throw std::invalid_argument("enumerate_reduced_words: n >= 1 required");
    int ecap = caps.max_exponent;
    if (ecap <= 0) {
        if (caps.max_norm <= 0)
            throw std::invalid_argument("enumerate_reduced_words: exponent cap or norm cutoff required");
        ecap = certified_exponent_cap(G, caps.max_norm);
    } else if (caps.max_norm > 0) {
        ecap = std::min(ecap, certified_exponent_cap(G, caps.max_norm));
    }
    DfsConfig cfg;
    cfg.G = &G;
    cfg.alphabet = a;
    cfg.types = alphabet_types(G, a);
    cfg.exp_cap = ecap;
    cfg.len_cap = n;
    cfg.exact_length = true;
    cfg.target_length = n;
    cfg.sqrt_cutoff = caps.max_norm > 0 ? std::sqrt(caps.max_norm) : 0;
    cfg.emit = [&](const Word& w, const Mat2&, int) { sink(w, b_tags(G, w)); };
    Word w;
    dfs(cfg, w, Mat2{1, 0, 0, 1}, 0);
}

ClassList enumerate_conj_classes(const HeckeGroup& G, GroupTag tag, double cutoff,
                                 WordCaps caps) {
    if (!(cutoff > 1)) throw std::invalid_argument("enumerate_conj_classes: cutoff must be > 1");
    Alphabet a = tag == GroupTag::Gamma ? Alphabet::G : Alphabet::GQ;

    int cert_e = certified_exponent_cap(G, cutoff);
    int cert_l = certified_length_cap(G, a, cutoff);
    ClassList out;
    out.cutoff = cutoff;
    out.certified = true;
    int ecap = caps.max_exponent > 0 ? std::min(caps.max_exponent, cert_e) : cert_e;
    int lcap = caps.max_length > 0 ? std::min(caps.max_length, cert_l) : cert_l;
    if (ecap < cert_e || lcap < cert_l) out.certified = false;

    std::map<Word, ConjClassRecord> found;
    DfsConfig cfg;
    cfg.G = &G;
    cfg.alphabet = a;
    cfg.types = alphabet_types(G, a);
    cfg.exp_cap = ecap;
    cfg.len_cap = lcap;
    cfg.sqrt_cutoff = std::sqrt(cutoff);
    cfg.emit = [&](const Word& w, const Mat2& acc, int eps) {
        if (!pair_allowed(a, G.q, w.letters.back(), w.letters.front())) return; // not regular
        int det = eps % 2 == 0 ? 1 : -1;
        if (norm_from_twisted(acc, det) > cutoff * (1 + 1e-12)) return;
        CanonInfo ci = canonical_info(G, w, tag);
        auto it = found.find(ci.canon);
        if (it != found.end()) return;
        ConjClassRecord rec;
        rec.canonical_word = ci.canon;
        rec.element = word_element(G, ci.canon);
        rec.det = word_det(ci.canon);
        rec.N = rec.element.norm();
        rec.ell = ci.canon.length();
        rec.n = ci.n;
        auto [e2, k2] = eps_and_k(G, ci.canon);
        rec.eps = e2;
        rec.kcount = k2;
        rec.group_tag = tag;
        rec.boundary = ci.boundary;
        found.emplace(ci.canon, std::move(rec));
    };
    Word w;
    dfs(cfg, w, Mat2{1, 0, 0, 1}, 0);

    out.classes.reserve(found.size());
    for (auto& [key, rec] : found) out.classes.push_back(std::move(rec));
    std::sort(out.classes.begin(), out.classes.end(),
              [](const ConjClassRecord& x, const ConjClassRecord& y) {
                  if (x.N != y.N) return x.N < y.N;
                  return x.canonical_word < y.canonical_word;
              });
    return out;
}

Translation translate_coding(const HeckeGroup& G, const Word& g_word) {
    if (G.q_even) throw std::invalid_argument("translate_coding: defined for odd q only");
    check_word(G, Alphabet::G, g_word);
    Translation out;
    int pending = 0;
    for (const Letter& in : g_word.letters) {
        Letter cur{pending != 0, in.base, in.exp};
        if (cur.base >= G.m) {
            // upper half passes through
            out.word.letters.push_back(cur);
            pending = 0;
        } else {
            // lower half: (Q^f g_b^e) Q = Q^(1-f) g_{q-b}^e, and a Q is
            // pushed onto the next letter
            out.word.letters.push_back(Letter{!cur.qflag, G.q - cur.base, cur.exp});
            pending = 1;
        }
    }
    out.delta = pending;
    for (const Letter& l : out.word.letters)
        if (!letter_valid(G, Alphabet::GQ, l))
            throw std::logic_error("translate_coding: output letter invalid");
    return out;
}

} // namespace hz

// Symbolic model of the genus-g surface group: freely reduced words over the
// standard generators a1,b1,...,ag,bg, the commutator relator, certified
// automorphisms (substitution tables plus a conjugator certificate), Dehn
// twist tables, and the 9g-9 curve system.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace symplab::words {

// Generators are numbered 1..2g in the order a1,b1,a2,b2,...; a negative
// index denotes the inverse letter.
using Letter = int;

struct Word {
    std::vector<Letter> letters;  // freely reduced, every |letter| <= 2g
    int genus = 2;

    Word() = default;
    Word(std::vector<Letter> ls, int g);  // reduces eagerly, validates range

    bool empty() const { return letters.empty(); }
    std::size_t size() const { return letters.size(); }
    bool operator==(const Word& o) const {
        return genus == o.genus && letters == o.letters;
    }
};

Word free_reduce(const Word& w);                  // idempotent canonical form
Word concat(const Word& a, const Word& b);        // reduced product
Word inverse(const Word& w);
Word power(const Word& w, int k);
Word conjugate(const Word& c, const Word& w);     // c w c^-1
Word cyclic_reduce(const Word& w, Word* peeled = nullptr);  // w = p ~w p^-1

// generator helpers: a(i), b(i) are 1-based handle indices
Letter gen_a(int i);
Letter gen_b(int i);
std::string letter_name(Letter l);                       // "a1", "-b2", ...
std::optional<Letter> parse_letter(const std::string& s, int genus);

struct Presentation {
    int genus;
    explicit Presentation(int g);
    Word relator() const;   // product of commutators [a_i, b_i], length 4g
    int rank() const { return 2 * genus; }
};

struct Automorphism {
    int genus = 2;
    std::vector<Word> images;  // images of generators 1..2g
    Word conjugator;           // certificate
    int relator_exponent = 1;  // +1 orientation-preserving, -1 reversing
    bool certified = false;    // set only by verify_automorphism
    std::string label;

    const Word& image(int generator_index) const {  // 1-based
        return images.at(static_cast<std::size_t>(generator_index) - 1);
    }
};

struct NoConjugatorFound : std::runtime_error {
    int depth;
    explicit NoConjugatorFound(int d)
        : std::runtime_error("substitution table is not certified as an "
                             "automorphism at conjugator depth " +
                             std::to_string(d)),
          depth(d) {}
};

// Substitute generator images into w and freely reduce.
Word apply_automorphism(const Automorphism& psi, const Word& w);

// Certify a substitution table: find a conjugator c with
// psi(relator) = c relator^{+-1} c^-1 exactly, |c| <= max_conjugator_len.
// Throws NoConjugatorFound if there is none within the depth.
Automorphism verify_automorphism(const std::vector<Word>& images, int genus,
                                 int max_conjugator_len = 8,
                                 const std::string& label = "");

Automorphism identity_automorphism(int genus);
Automorphism compose(const Automorphism& outer, const Automorphism& inner,
                     int max_conjugator_len = 32);
Automorphism inverse_of_twist(const Automorphism& psi,
                              int max_conjugator_len = 32);
Word apply_power(const Automorphism& psi, const Word& w, int k);  // psi^k(w)

// Built-in certified Dehn twists for genus 2: along a1, a2, b1, b2 and the
// separating curve [a1,b1] (labels "a1","a2","b1","b2","c").
std::vector<Automorphism> builtin_twists(int genus);
const Automorphism& builtin_twist(int genus, const std::string& label);

struct CurveSystem {
    int genus = 2;
    std::vector<Word> curves;        // 9g-9 entries, all nontrivial
    std::vector<std::string> labels;
};

// Built-in genus-2 system: pants curves (a1, a2, [a1,b1]), seams
// (b1, b2, b1*b2) and the twist images of the seams along their pants curves.
CurveSystem curve_system(int genus);
CurveSystem curve_system_from_words(int genus, std::vector<Word> curves,
                                    std::vector<std::string> labels);

}  // namespace symplab::words

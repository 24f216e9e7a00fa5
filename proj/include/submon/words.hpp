#ifndef SUBMON_WORDS_HPP_
#define SUBMON_WORDS_HPP_

#include <cstddef>
#include <cstdlib>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "submon/errors.hpp"

namespace submon {

  // A signed letter: generator i is encoded as i+1, its inverse as -(i+1).
  using Letter  = int;
  using Letters = std::vector<Letter>;

  inline std::size_t gen_of(Letter x) noexcept {
    return static_cast<std::size_t>(std::abs(x) - 1);
  }

  inline int sign_of(Letter x) noexcept {
    return x > 0 ? 1 : -1;
  }

  inline Letter make_letter(std::size_t gen, int sign) noexcept {
    auto v = static_cast<Letter>(gen + 1);
    return sign > 0 ? v : -v;
  }

  ////////////////////////////////////////////////////////////////////////
  // Raw letter-vector kernels. These are the hot paths; the Word class
  // below only adds alphabet bookkeeping on top of them.
  ////////////////////////////////////////////////////////////////////////

  Letters reduce(Letters const& w);
  void    reduce_in_place(Letters& w);
  Letters inverse(Letters const& w);
  // Concatenate and freely reduce across the seam (both inputs reduced).
  Letters multiply(Letters const& u, Letters const& v);
  void    append_reduced(Letters& u, Letters const& v);
  bool    is_reduced(Letters const& w);
  bool    is_cyclically_reduced(Letters const& w);
  // Returns (core, conjugator) with w = conjugator * core * conjugator^-1.
  std::pair<Letters, Letters> cyclic_reduce(Letters const& w);
  long exponent_sum(Letters const& w, std::size_t gen);
  Letters power(Letters const& w, long k);

  class Alphabet {
   public:
    explicit Alphabet(std::vector<std::string> names);

    std::size_t size() const noexcept {
      return _names.size();
    }
    std::string const& name(std::size_t i) const {
      return _names.at(i);
    }
    std::vector<std::string> const& names() const noexcept {
      return _names;
    }
    std::optional<std::size_t> find(std::string_view name) const;
    std::size_t                index(std::string_view name) const;

    // Every name is a single lowercase ASCII letter, so words can be
    // written as "abAB".
    bool compact() const noexcept {
      return _compact;
    }

    bool operator==(Alphabet const& other) const {
      return _names == other._names;
    }
    bool operator!=(Alphabet const& other) const {
      return !(*this == other);
    }

   private:
    std::vector<std::string>           _names;
    std::map<std::string, std::size_t> _lookup;
    bool                               _compact;
  };

  using AlphabetPtr = std::shared_ptr<Alphabet const>;

  AlphabetPtr make_alphabet(std::vector<std::string> names);
  bool        same_alphabet(AlphabetPtr const& x, AlphabetPtr const& y);

  class Word {
   public:
    Word() = default;
    explicit Word(AlphabetPtr alphabet, Letters letters = {});

    AlphabetPtr const& alphabet() const noexcept {
      return _alphabet;
    }
    Letters const& letters() const noexcept {
      return _letters;
    }
    std::size_t size() const noexcept {
      return _letters.size();
    }
    bool empty() const noexcept {
      return _letters.empty();
    }
    bool reduced() const {
      return is_reduced(_letters);
    }

    // Free product of two words over the same alphabet, reduced.
    Word operator*(Word const& other) const;
    Word inverse() const;
    // Literal concatenation, no reduction; used by internal builders.
    Word concat(Word const& other) const;

    bool operator==(Word const& other) const {
      return _letters == other._letters
             && same_alphabet(_alphabet, other._alphabet);
    }
    bool operator!=(Word const& other) const {
      return !(*this == other);
    }

   private:
    AlphabetPtr _alphabet;
    Letters     _letters;
  };

  struct CyclicReduction {
    Word word;
    Word conjugator;
  };

  Word            free_reduce(Word const& w);
  CyclicReduction cyclic_reduce(Word const& w);
  long            exponent_sum(Word const& w, std::string_view gen);

  // Text form. Compact alphabets print "abAB"; others print tokens
  // separated by spaces with ' marking an inverse ("a1 a1' b2").
  std::string format_letters(Alphabet const& alphabet, Letters const& w);
  std::string to_string(Word const& w);
  // Always the token form, whatever the alphabet.
  std::string to_token_string(Word const& w);

  // Accepts whitespace separated tokens `name`, `name'` and `name^k`
  // (k may be negative). On compact alphabets a token that is not a name
  // is read letter by letter, uppercase meaning inverse. "1" and the
  // empty string denote the identity.
  Word    parse_word(AlphabetPtr const& alphabet, std::string_view text);
  Letters parse_letters(Alphabet const& alphabet, std::string_view text);

  class Presentation {
   public:
    Presentation() = default;
    Presentation(AlphabetPtr alphabet, std::vector<Word> relators);

    AlphabetPtr const& alphabet() const noexcept {
      return _alphabet;
    }
    std::vector<Word> const& relators() const noexcept {
      return _relators;
    }
    bool one_relator() const noexcept {
      return _relators.size() == 1;
    }
    Word const& relator() const;

   private:
    AlphabetPtr       _alphabet;
    std::vector<Word> _relators;
  };

  // Grammar: lines "gens: a b c d" and "rel: a b a' b' c d c' d'";
  // '#' starts a comment. Several rel lines are allowed.
  Presentation parse_presentation_text(std::string_view text);
  std::string  format_presentation(Presentation const& p);

  // Tietze move: remove generator `gen` using a relator in which it
  // occurs exactly once; the relator is dropped and every other relator
  // is rewritten. Throws PreconditionError when no such relator exists.
  Presentation eliminate_generator(Presentation const& p,
                                   std::string_view    gen);

  class GroupHom {
   public:
    GroupHom() = default;
    GroupHom(AlphabetPtr source, AlphabetPtr target,
             std::vector<Letters> images);

    static GroupHom identity(AlphabetPtr alphabet);
    // Images given as text in the target alphabet; missing generators
    // map to themselves if the name exists in the target, else an error.
    static GroupHom from_strings(
        AlphabetPtr source, AlphabetPtr target,
        std::vector<std::pair<std::string, std::string>> const& images);

    AlphabetPtr const& source() const noexcept {
      return _source;
    }
    AlphabetPtr const& target() const noexcept {
      return _target;
    }
    Letters const& image(std::size_t gen) const {
      return _images.at(gen);
    }
    std::vector<Letters> const& images() const noexcept {
      return _images;
    }

    Letters apply(Letters const& w) const;
    Word    operator()(Word const& w) const;

    // (this ∘ other)(w) = this(other(w)).
    GroupHom after(GroupHom const& other) const;

    // Largest image length, the constant C of a budget composition.
    std::size_t max_image_length() const;

   private:
    AlphabetPtr          _source;
    AlphabetPtr          _target;
    std::vector<Letters> _images;
  };

  Word apply_hom(GroupHom const& h, Word const& w);

}  // namespace submon

#endif  // SUBMON_WORDS_HPP_

#ifndef SUBMON_DISTORTION_HPP_
#define SUBMON_DISTORTION_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "submon/engines.hpp"
#include "submon/verdict.hpp"
#include "submon/words.hpp"

namespace submon {

  ////////////////////////////////////////////////////////////////////////
  // Budgets
  ////////////////////////////////////////////////////////////////////////

  enum class BudgetSemantics {
    distortion,        // bounds the shortest factorization |g|_S
    upper_distortion,  // bounds the longest factorization lambda_S(g)
  };

  // n -> a n + b
  struct DistortionBudget {
    std::size_t     a = 1;
    std::size_t     b = 0;
    std::string     provenance;
    BudgetSemantics semantics = BudgetSemantics::upper_distortion;

    std::size_t operator()(std::size_t n) const noexcept {
      return a * n + b;
    }
    std::string to_string() const;
  };

  // lambda(n) = inner(C n) where C is the longest image of a generator
  // of f's source. Throws if f sends some element of S to 1.
  DistortionBudget compose_budget(DistortionBudget const&     inner,
                                  GroupHom const&             f,
                                  std::vector<Letters> const& S);

  struct UndistortedConstants {
    std::size_t      L;
    std::size_t      L_prime;
    DistortionBudget delta;
  };

  // For a finite W in a free group of the given rank: L the longest
  // generator, L' the largest |u|_W over members u with |u| <= L+1
  // (found by enumerating the ball), delta(n) = L'n + 2L'L + 1.
  UndistortedConstants undistorted_constants(std::size_t                 rank,
                                             std::vector<Letters> const& W);
  UndistortedConstants undistorted_constants(AlphabetPtr const&       A,
                                             std::vector<Word> const& W);

  ////////////////////////////////////////////////////////////////////////
  // Gradedness certificates
  ////////////////////////////////////////////////////////////////////////

  struct MidpointRow {
    std::size_t i;        // the suffix s_i
    std::size_t j;        // the word alpha_j
    Letters     product;  // red(s_i alpha_j)
    Letters     p;        // surviving prefix of s_i
    Letters     l;        // surviving suffix of alpha_j
    bool        ok;
  };

  struct MidpointTable {
    std::vector<Letters>     words;
    std::vector<Letters>     suffixes;
    std::vector<MidpointRow> rows;
    bool                     pass = false;

    std::string to_text(Alphabet const& A) const;
  };

  // The suffix of w starting at the 1-based position ceil((|w|+1)/2).
  Letters midpoint_suffix(Letters const& w);

  MidpointTable midpoint_table(std::vector<Letters> const& W);

  enum class CertificateKind { code, midpoint, functional, free_image };

  std::string to_string(CertificateKind k);

  struct GradedCertificate {
    CertificateKind              kind;
    std::vector<Letters>         images;  // f(X) or X itself
    std::vector<Letters>         basis;   // code: the free generators
    std::optional<MidpointTable> table;
    std::vector<long>            functional;
    DistortionBudget             budget;
    std::string                  note;

    std::string to_text(Alphabet const& A) const;
  };

  std::optional<GradedCertificate> midpoint_certificate(
      std::vector<Letters> const& W);

  // Integer coefficients psi(g) per generator with psi(x) >= 1 for all
  // x in X and psi vanishing on every relator. The all-ones vector is
  // tried first, then the box [-box, box] shell by shell.
  std::optional<std::vector<long>> positive_functional(
      Presentation const& p, std::vector<Letters> const& X, long box = 8);

  long apply_functional(std::vector<long> const& psi, Letters const& w);

  // S_2 -> F(a,b): a -> a, b -> b, c -> z^m b z^-m, d -> z^m a z^-m with
  // z = abAB. Only genus 2 is supported.
  GroupHom dehn_twist_hom(std::size_t g, long m);

  // S_2 -> F(x,y): a, d -> x and b, c -> x^-1 y x.
  GroupHom prefix_retraction();

  // S_g -> S_2 (a1 -> a, b1 -> b, ag -> c, bg -> d, the rest -> 1) and
  // N_g -> N_2 (a1 -> c, ag -> d, the rest -> 1).
  GroupHom surface_collapse(Presentation const& source, std::size_t g,
                            bool orientable);

  struct FreeImageResult {
    std::optional<GradedCertificate> certificate;
    std::string                      failure;
  };

  // Gradedness of Mon<X> from its image under f into a free group.
  // The images must be nontrivial. Tries the code test on the
  // irredundant images, then the midpoint table.
  FreeImageResult free_image_graded(GroupHom const&             f,
                                    std::vector<Letters> const& X);

  // Images of X that are not literal concatenations of other images.
  std::vector<Letters> irredundant_images(std::vector<Letters> const& images);

  ////////////////////////////////////////////////////////////////////////
  // Searches
  ////////////////////////////////////////////////////////////////////////

  struct SearchLimits {
    std::size_t max_factors = 8;
    std::size_t max_nodes   = 2'000'000;
    bool        parallel    = true;
  };

  // A caller's claim that the factor bound is complete.
  struct Completeness {
    bool        certified = false;
    std::string reason;
  };

  // Breadth-first over products of at most max_factors generators,
  // deduplicated by engine keys when available.
  Verdict bounded_search(WordProblemEngine const&        e,
                         std::vector<Letters> const&     W,
                         std::vector<std::string> const& names,
                         Letters const& w, SearchLimits const& limits,
                         Completeness const& completeness = {});

  // Products whose psi-values add up to psi(w), each psi(x) >= 1;
  // meet in the middle on psi. Complete with no further certificate.
  Verdict weighted_search(WordProblemEngine const&        e,
                          std::vector<Letters> const&     W,
                          std::vector<std::string> const& names,
                          std::vector<long> const&        psi,
                          Letters const& w, SearchLimits const& limits,
                          std::string const& provenance);

  // Factorizations guided by the literal parse of f(w) over a code basis
  // of f(X) without cancellation (as certified by free_image_graded).
  Verdict guided_search(WordProblemEngine const&        e,
                        std::vector<Letters> const&     W,
                        std::vector<std::string> const& names,
                        GroupHom const& f, GradedCertificate const& cert,
                        Letters const& w, SearchLimits const& limits);

}  // namespace submon

#endif  // SUBMON_DISTORTION_HPP_

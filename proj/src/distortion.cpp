#include "submon/distortion.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "submon/automata.hpp"
#include "submon/errors.hpp"

namespace submon {

  std::string DistortionBudget::to_string() const {
    std::ostringstream out;
    out << (semantics == BudgetSemantics::distortion ? "delta" : "lambda")
        << "(n) = ";
    if (a != 0 || b == 0) {
      out << (a == 1 ? "" : std::to_string(a)) << 'n';
    }
    if (b != 0) {
      out << (a != 0 ? " + " : "") << b;
    }
    if (!provenance.empty()) {
      out << "  [" << provenance << ']';
    }
    return out.str();
  }

  DistortionBudget compose_budget(DistortionBudget const&     inner,
                                  GroupHom const&             f,
                                  std::vector<Letters> const& S) {
    for (auto const& s : S) {
      if (reduce(f.apply(s)).empty()) {
        throw PreconditionError("a generator of the submonoid maps to 1; no "
                                "budget transfers");
      }
    }
    std::size_t      C = f.max_image_length();
    DistortionBudget out;
    out.a         = inner.a * C;
    out.b         = inner.b;
    out.semantics = inner.semantics;
    out.provenance
        = inner.provenance + (inner.provenance.empty() ? "" : ", ")
          + "composed with a homomorphism of constant C = " + std::to_string(C);
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Undistorted constants
  ////////////////////////////////////////////////////////////////////////

  namespace {
    // Every reduced word of length <= radius over `rank` generators.
    std::vector<Letters> ball(std::size_t rank, std::size_t radius) {
      std::vector<Letters> out{{}};
      std::size_t          begin = 0;
      for (std::size_t len = 1; len <= radius; ++len) {
        std::size_t end = out.size();
        for (std::size_t k = begin; k < end; ++k) {
          for (std::size_t g = 0; g < rank; ++g) {
            for (int s : {1, -1}) {
              Letter x = make_letter(g, s);
              if (!out[k].empty() && out[k].back() == -x) {
                continue;
              }
              Letters u = out[k];
              u.push_back(x);
              out.push_back(std::move(u));
            }
          }
        }
        begin = end;
      }
      return out;
    }
  }  // namespace

  UndistortedConstants undistorted_constants(std::size_t                 rank,
                                             std::vector<Letters> const& W) {
    UndistortedConstants out{0, 0, {}};
    std::vector<Letters> R;
    for (auto const& w : W) {
      R.push_back(reduce(w));
      out.L = std::max(out.L, R.back().size());
    }
    auto acceptor = star_acceptor(R);
    for (auto const& u : ball(rank, out.L + 1)) {
      std::size_t c = acceptor.min_cost(u);
      if (c != kInfinity) {
        out.L_prime = std::max(out.L_prime, c);
      }
    }
    out.delta.a         = out.L_prime;
    out.delta.b         = 2 * out.L_prime * out.L + 1;
    out.delta.semantics = BudgetSemantics::distortion;
    out.delta.provenance
        = "L'n + 2L'L + 1 with L = " + std::to_string(out.L)
          + ", L' = " + std::to_string(out.L_prime);
    return out;
  }

  UndistortedConstants undistorted_constants(AlphabetPtr const&       A,
                                             std::vector<Word> const& W) {
    std::vector<Letters> R;
    for (auto const& w : W) {
      if (!same_alphabet(A, w.alphabet())) {
        throw PreconditionError("words over different alphabets");
      }
      R.push_back(w.letters());
    }
    return undistorted_constants(A->size(), R);
  }

  ////////////////////////////////////////////////////////////////////////
  // Midpoint tables
  ////////////////////////////////////////////////////////////////////////

  Letters midpoint_suffix(Letters const& w) {
    std::size_t start = (w.size() + 2) / 2;  // ceil((len+1)/2), 1-based
    if (w.empty()) {
      return {};
    }
    return Letters(w.begin() + static_cast<long>(start - 1), w.end());
  }

  MidpointTable midpoint_table(std::vector<Letters> const& W) {
    MidpointTable t;
    t.words = W;
    t.pass  = !W.empty();
    for (auto const& w : W) {
      if (w.empty() || !is_reduced(w)) {
        t.pass = false;
      }
      t.suffixes.push_back(midpoint_suffix(w));
    }
    for (std::size_t i = 0; i < W.size(); ++i) {
      for (std::size_t j = 0; j < W.size(); ++j) {
        Letters const& s = t.suffixes[i];
        Letters const& a = W[j];
        MidpointRow    row{i, j, multiply(s, a), {}, {}, false};
        std::size_t    c = (s.size() + a.size() - row.product.size()) / 2;
        row.p = Letters(s.begin(), s.end() - static_cast<long>(c));
        row.l = Letters(a.begin() + static_cast<long>(std::min(c, a.size())),
                        a.end());
        row.ok = !row.p.empty() && c + t.suffixes[j].size() <= a.size();
        t.pass = t.pass && row.ok;
        t.rows.push_back(std::move(row));
      }
    }
    return t;
  }

  std::string MidpointTable::to_text(Alphabet const& A) const {
    std::ostringstream out;
    for (std::size_t i = 0; i < words.size(); ++i) {
      out << "alpha" << i + 1 << " = " << format_letters(A, words[i])
          << "   s" << i + 1 << " = " << format_letters(A, suffixes[i])
          << '\n';
    }
    for (auto const& r : rows) {
      out << "s" << r.i + 1 << " alpha" << r.j + 1 << ": "
          << format_letters(A, r.product) << "  p = "
          << format_letters(A, r.p) << "  l = " << format_letters(A, r.l)
          << (r.ok ? "  ok" : "  FAIL") << '\n';
    }
    out << (pass ? "PASS" : "FAIL") << '\n';
    return out.str();
  }

  std::string to_string(CertificateKind k) {
    switch (k) {
      case CertificateKind::code:
        return "code without cancellation";
      case CertificateKind::midpoint:
        return "midpoint progress";
      case CertificateKind::functional:
        return "positive functional";
      case CertificateKind::free_image:
        return "free image";
    }
    return "?";
  }

  std::string GradedCertificate::to_text(Alphabet const& A) const {
    std::ostringstream out;
    out << "certificate: " << to_string(kind) << '\n';
    if (!note.empty()) {
      out << "note: " << note << '\n';
    }
    if (!basis.empty()) {
      out << "free basis:";
      for (auto const& b : basis) {
        out << ' ' << format_letters(A, b);
      }
      out << '\n';
    }
    if (table) {
      out << table->to_text(A);
    }
    if (!functional.empty()) {
      out << "psi =";
      for (long c : functional) {
        out << ' ' << c;
      }
      out << '\n';
    }
    out << "budget: " << budget.to_string() << '\n';
    return out.str();
  }

  std::optional<GradedCertificate> midpoint_certificate(
      std::vector<Letters> const& W) {
    auto table = midpoint_table(W);
    if (!table.pass) {
      return std::nullopt;
    }
    GradedCertificate c;
    c.kind   = CertificateKind::midpoint;
    c.images = W;
    c.table  = std::move(table);
    c.budget = {1, 0, "k-fold products have reduced length at least k",
                BudgetSemantics::upper_distortion};
    return c;
  }

  ////////////////////////////////////////////////////////////////////////
  // Positive functionals
  ////////////////////////////////////////////////////////////////////////

  long apply_functional(std::vector<long> const& psi, Letters const& w) {
    long s = 0;
    for (Letter x : w) {
      s += sign_of(x) * psi.at(gen_of(x));
    }
    return s;
  }

  std::optional<std::vector<long>> positive_functional(
      Presentation const& p, std::vector<Letters> const& X, long box) {
    std::size_t const n = p.alphabet()->size();
    auto exps = [n](Letters const& w) {
      std::vector<long> v(n, 0);
      for (Letter x : w) {
        v[gen_of(x)] += sign_of(x);
      }
      return v;
    };
    std::vector<std::vector<long>> xs, rs;
    for (auto const& x : X) {
      xs.push_back(exps(x));
      if (std::all_of(xs.back().begin(), xs.back().end(),
                      [](long c) { return c == 0; })) {
        return std::nullopt;
      }
    }
    for (auto const& r : p.relators()) {
      rs.push_back(exps(r.letters()));
    }
    auto dot = [](std::vector<long> const& u, std::vector<long> const& v) {
      long s = 0;
      for (std::size_t k = 0; k < u.size(); ++k) {
        s += u[k] * v[k];
      }
      return s;
    };
    auto good = [&](std::vector<long> const& psi) {
      for (auto const& r : rs) {
        if (dot(psi, r) != 0) {
          return false;
        }
      }
      for (auto const& x : xs) {
        if (dot(psi, x) < 1) {
          return false;
        }
      }
      return true;
    };
    std::vector<long> ones(n, 1);
    if (good(ones)) {
      return ones;
    }
    // Only generators that occur somewhere matter; the others stay 0.
    std::vector<std::size_t> live;
    for (std::size_t g = 0; g < n; ++g) {
      bool used = false;
      for (auto const& v : xs) {
        used = used || v[g] != 0;
      }
      for (auto const& v : rs) {
        used = used || v[g] != 0;
      }
      if (used) {
        live.push_back(g);
      }
    }
    for (long s = 1; s <= box; ++s) {
      std::vector<long> digits(live.size(), -s);
      while (true) {
        long norm = 0;
        for (long d : digits) {
          norm = std::max(norm, std::labs(d));
        }
        if (norm == s) {
          std::vector<long> psi(n, 0);
          for (std::size_t k = 0; k < live.size(); ++k) {
            psi[live[k]] = digits[k];
          }
          if (good(psi)) {
            return psi;
          }
        }
        // lexicographic successor, last coordinate fastest
        std::size_t k = digits.size();
        while (k > 0 && digits[k - 1] == s) {
          digits[--k] = -s;
        }
        if (k == 0) {
          break;
        }
        ++digits[k - 1];
      }
    }
    return std::nullopt;
  }

  ////////////////////////////////////////////////////////////////////////
  // Homomorphisms
  ////////////////////////////////////////////////////////////////////////

  GroupHom dehn_twist_hom(std::size_t g, long m) {
    if (g != 2) {
      throw PreconditionError("Dehn twists are only provided for genus 2");
    }
    auto    S = make_alphabet({"a", "b", "c", "d"});
    auto    F = make_alphabet({"a", "b"});
    Letters z = parse_letters(*F, "abAB");
    Letters zm = power(z, m), zmi = power(z, -m);
    auto conj = [&](Letters const& x) { return multiply(multiply(zm, x), zmi); };
    return GroupHom(S, F, {{1}, {2}, conj({2}), conj({1})});
  }

  GroupHom prefix_retraction() {
    auto S = make_alphabet({"a", "b", "c", "d"});
    auto F = make_alphabet({"x", "y"});
    Letters x{1}, b = parse_letters(*F, "Xyx");
    return GroupHom(S, F, {x, b, b, x});
  }

  GroupHom surface_collapse(Presentation const& source, std::size_t g,
                            bool orientable) {
    auto const& A = source.alphabet();
    if (g == 2) {
      return GroupHom::identity(A);
    }
    if (g < 2) {
      throw PreconditionError("genus must be at least 2");
    }
    std::vector<Letters> images(A->size());
    if (orientable) {
      auto T = make_alphabet({"a", "b", "c", "d"});
      images[A->index("a1")]                    = {1};
      images[A->index("b1")]                    = {2};
      images[A->index("a" + std::to_string(g))] = {3};
      images[A->index("b" + std::to_string(g))] = {4};
      return GroupHom(A, T, images);
    }
    auto T = make_alphabet({"c", "d"});
    images[A->index("a1")]                    = {1};
    images[A->index("a" + std::to_string(g))] = {2};
    return GroupHom(A, T, images);
  }

  std::vector<Letters> irredundant_images(std::vector<Letters> const& images) {
    std::set<Letters> distinct(images.begin(), images.end());
    std::vector<Letters> all(distinct.begin(), distinct.end());
    std::vector<Letters> out;
    for (auto const& u : all) {
      std::vector<Letters> others;
      for (auto const& v : all) {
        if (v != u) {
          others.push_back(v);
        }
      }
      if (literal_factorizations(others, u, 1).empty()) {
        out.push_back(u);
      }
    }
    return out;
  }

  FreeImageResult free_image_graded(GroupHom const&             f,
                                    std::vector<Letters> const& X) {
    FreeImageResult      res;
    std::vector<Letters> images;
    for (auto const& x : X) {
      images.push_back(reduce(f.apply(x)));
      if (images.back().empty()) {
        res.failure = "precondition: 1 lies in f(X)";
        return res;
      }
    }
    auto basis = irredundant_images(images);
    if (no_cancellation(basis) && is_code(basis)) {
      GradedCertificate c;
      c.kind   = CertificateKind::code;
      c.images = images;
      c.basis  = basis;
      c.budget = compose_budget(
          {1, 0, "image is a free monoid on a code without cancellation",
           BudgetSemantics::upper_distortion},
          f, X);
      res.certificate = std::move(c);
      return res;
    }
    std::set<Letters> distinct(images.begin(), images.end());
    if (auto mc = midpoint_certificate({distinct.begin(), distinct.end()})) {
      mc->kind   = CertificateKind::free_image;
      mc->note   = "midpoint progress on the image";
      mc->budget = compose_budget(mc->budget, f, X);
      mc->images = images;
      res.certificate = std::move(*mc);
      return res;
    }
    res.failure = "image is neither a code without cancellation nor passes "
                  "the midpoint test";
    return res;
  }

}  // namespace submon

#include "submon/builtins.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "submon/errors.hpp"

namespace submon {

  Presentation orientable_surface(std::size_t g) {
    if (g == 0) {
      throw PreconditionError("surface genus must be positive");
    }
    if (g == 2) {
      auto A = make_alphabet({"a", "b", "c", "d"});
      return Presentation(A, {parse_word(A, "abABcdCD")});
    }
    std::vector<std::string> names;
    std::string              rel;
    for (std::size_t i = 1; i <= g; ++i) {
      std::string a = "a" + std::to_string(i), b = "b" + std::to_string(i);
      names.push_back(a);
      names.push_back(b);
      rel += a + " " + b + " " + a + "' " + b + "' ";
    }
    auto A = make_alphabet(names);
    return Presentation(A, {parse_word(A, rel)});
  }

  Presentation nonorientable_surface(std::size_t g) {
    if (g == 0) {
      throw PreconditionError("surface genus must be positive");
    }
    if (g == 2) {
      auto A = make_alphabet({"c", "d"});
      return Presentation(A, {parse_word(A, "ccdd")});
    }
    std::vector<std::string> names;
    std::string              rel;
    for (std::size_t i = 1; i <= g; ++i) {
      std::string a = "a" + std::to_string(i);
      names.push_back(a);
      rel += a + "^2 ";
    }
    auto A = make_alphabet(names);
    return Presentation(A, {parse_word(A, rel)});
  }

  Presentation surface_group(std::size_t g, bool orientable) {
    return orientable ? orientable_surface(g) : nonorientable_surface(g);
  }

  Presentation bs_group(long m, long n) {
    auto A = make_alphabet({"a", "t"});
    Letters r{2};
    append_reduced(r, power({1}, m));
    r.push_back(-2);
    append_reduced(r, power({1}, -n));
    return Presentation(A, {Word(A, r)});
  }

  Presentation burns_group() {
    auto A = make_alphabet({"a", "t"});
    return Presentation(A, {parse_word(A, "tatATaTA")});
  }

  Presentation builtin_presentation(std::string const& name) {
    std::string s;
    for (char c : name) {
      if (c == '(' || c == ')' || c == ',') {
        s += ' ';
      } else {
        s += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
      }
    }
    std::istringstream in(s);
    std::string        head;
    in >> head;
    if (head == "BURNS") {
      return burns_group();
    }
    if (head == "BS") {
      long m, n;
      if (!(in >> m >> n)) {
        throw ParseError("BS needs two integers", 0);
      }
      return bs_group(m, n);
    }
    if (head.size() >= 2 && (head[0] == 'S' || head[0] == 'N')
        && std::all_of(head.begin() + 1, head.end(),
                       [](char c) { return std::isdigit(c) != 0; })) {
      return surface_group(std::stoul(head.substr(1)), head[0] == 'S');
    }
    throw ParseError("unknown builtin group '" + name + "'", 0);
  }

  std::vector<Letters> prefix_generators(Presentation const& p,
                                         std::size_t g, bool orientable) {
    auto const& A = p.alphabet();
    if (g == 2 && orientable) {
      std::vector<Letters> out;
      for (auto s : {"a", "ab", "abA", "abAB", "d", "dc", "dcD", "dcDC"}) {
        out.push_back(parse_letters(*A, s));
      }
      return out;
    }
    if (g == 2 && !orientable) {
      return {parse_letters(*A, "c"), parse_letters(*A, "cc"),
              parse_letters(*A, "ccd")};
    }
    Letters const&       r = p.relator().letters();
    std::vector<Letters> out;
    for (std::size_t k = 1; k < r.size(); ++k) {
      out.emplace_back(r.begin(), r.begin() + static_cast<long>(k));
    }
    return out;
  }

}  // namespace submon

// Serial against OpenMP batch word problems.
//
//   bench_batch [words] [length]

#include <omp.h>

#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <random>

#include "submon/builtins.hpp"
#include "submon/engines.hpp"

using namespace submon;

namespace {
  template <typename F>
  double best_of(int reps, F&& f) {
    double best = 1e300;
    for (int i = 0; i < reps; ++i) {
      auto t0 = std::chrono::steady_clock::now();
      f();
      best = std::min(best, std::chrono::duration<double, std::milli>(
                                std::chrono::steady_clock::now() - t0)
                                .count());
    }
    return best;
  }

  std::vector<Letters> sample(std::size_t rank, std::size_t count,
                              std::size_t length, Letters const& relator) {
    std::mt19937_64                    rng(12345);
    std::uniform_int_distribution<int> g(1, static_cast<int>(rank));
    std::vector<Letters>               out;
    for (std::size_t i = 0; i < count; ++i) {
      Letters w;
      while (w.size() < length) {
        if (rng() % 4 == 0) {
          w.insert(w.end(), relator.begin(), relator.end());
        } else {
          w.push_back(rng() % 2 ? g(rng) : -g(rng));
        }
      }
      out.push_back(reduce(w));
    }
    return out;
  }
}  // namespace

int main(int argc, char** argv) {
  std::size_t count  = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 20000;
  std::size_t length = argc > 2 ? std::strtoul(argv[2], nullptr, 10) : 40;
  std::cout << "threads: " << omp_get_max_threads() << ", words: " << count
            << ", length: " << length << "\n";
  std::cout << std::left << std::setw(10) << "group" << std::setw(46) << "engine"
            << std::right << std::setw(12) << "serial ms" << std::setw(12)
            << "openmp ms" << std::setw(10) << "speedup" << "\n";
  for (std::string name : {"S2", "S3", "N3", "BS 2 3", "BURNS"}) {
    auto p     = builtin_presentation(name);
    auto e     = make_engine(p);
    auto words = sample(p.alphabet()->size(), count, length,
                        p.relator().letters());
    std::vector<char> a, b;
    double serial   = best_of(3, [&] { a = batch_is_trivial_serial(*e, words); });
    double parallel = best_of(3, [&] { b = batch_is_trivial(*e, words); });
    if (a != b) {
      std::cerr << name << ": serial and parallel results differ\n";
      return 1;
    }
    std::cout << std::left << std::setw(10) << name << std::setw(46)
              << e->name().substr(0, 45) << std::right << std::fixed
              << std::setprecision(1) << std::setw(12) << serial
              << std::setw(12) << parallel << std::setw(9)
              << std::setprecision(2) << serial / parallel << "x\n";
    if (e->has_key()) {
      std::vector<std::string> ka, kb;
      double ks = best_of(3, [&] { ka = batch_keys(*e, words, false); });
      double kp = best_of(3, [&] { kb = batch_keys(*e, words, true); });
      if (ka != kb) {
        std::cerr << name << ": serial and parallel keys differ\n";
        return 1;
      }
      std::cout << std::left << std::setw(10) << "" << std::setw(46)
                << "  keys" << std::right << std::setprecision(1)
                << std::setw(12) << ks << std::setw(12) << kp << std::setw(9)
                << std::setprecision(2) << ks / kp << "x\n";
    }
  }
}

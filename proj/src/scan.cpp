#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>

#include "thinlie/subfield.hpp"

namespace thinlie::subfield {

unsigned worker_count(unsigned requested) {
  unsigned n = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("THINLIE_THREADS")) {
    char* end = nullptr;
    long cap = std::strtol(env, &end, 10);
    if (end != env && cap > 0) n = std::min(n, static_cast<unsigned>(cap));
  }
  return std::max(1u, n);
}

std::vector<GeneratorPair> normalized_pairs(const ExtField& f) {
  std::vector<GeneratorPair> out;
  const auto elems = f.elements();
  const auto one = f.one(), mu = f.mu();
  for (const auto& beta : elems)
    for (const auto& delta : elems) {
      auto g = GeneratorPair::make(one, beta, mu, delta);
      if (independent(f, g)) out.push_back(g);
    }
  // delta over E*/F*: (1 : 0) and (c : 1), the first nonzero coordinate of
  // delta normalized to 1.
  std::vector<ExtElem> deltas;
  for (const auto& e : elems) {
    if (f.is_zero(e)) continue;
    if ((e.c1 == 0 && e.c0 == 1) || e.c1 == 1) deltas.push_back(e);
  }
  for (const auto& delta : deltas)
    for (const auto& beta : elems) {
      // beta mod F delta: keep the representative minimal in index order.
      bool minimal = true;
      for (std::uint32_t c = 1; c < f.p() && minimal; ++c)
        if (f.index(f.add(beta, f.mul(f.embed(c), delta))) < f.index(beta)) minimal = false;
      if (minimal) out.push_back(GeneratorPair::make(one, beta, f.zero(), delta));
    }
  return out;
}

namespace {

std::vector<GeneratorPair> raw_pairs(const ExtField& f) {
  std::vector<GeneratorPair> out;
  const auto elems = f.elements();
  for (const auto& a : elems)
    for (const auto& b : elems)
      for (const auto& c : elems)
        for (const auto& d : elems) out.push_back(GeneratorPair::make(a, b, c, d));
  return out;
}

void tally(ScanTable& t, const SubalgebraAnalysis& a) {
  switch (a.verdict) {
    case Verdict::Thin: ++t.thin; break;
    case Verdict::MaximalClass: ++t.maximal; break;
    case Verdict::Degenerate: ++t.degenerate; break;
    case Verdict::RConstrained: ++t.rconstrained[a.r_observed.value_or(-1)]; break;
  }
}

}  // namespace

ScanTable scan(const Algebra& alg, int window, ScanOptions options) {
  const auto& f = alg.field();
  const auto pairs = options.raw ? raw_pairs(f) : normalized_pairs(f);
  const unsigned workers = std::min<unsigned>(worker_count(options.threads),
                                              static_cast<unsigned>(std::max<std::size_t>(1, pairs.size())));
  std::vector<ScanTable> partial(workers);
  std::vector<std::exception_ptr> errors(workers);

  auto work = [&](unsigned w) {
    try {
      auto& t = partial[w];
      for (std::size_t k = w; k < pairs.size(); k += workers) {
        const auto& g = pairs[k];
        tally(t, generate_subalgebra(alg, g, window));
        if (independent(f, g) && thin_line_criterion(alg.presentation(), g, window).avoided) ++t.thin_by_lines;
      }
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  std::vector<std::thread> threads;
  for (unsigned w = 1; w < workers; ++w) threads.emplace_back(work, w);
  work(0);
  for (auto& th : threads) th.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  ScanTable out;
  out.window = window;
  out.pairs = pairs.size();
  for (const auto& t : partial) {
    out.thin += t.thin;
    out.maximal += t.maximal;
    out.degenerate += t.degenerate;
    out.thin_by_lines += t.thin_by_lines;
    for (const auto& [r, c] : t.rconstrained) out.rconstrained[r] += c;
  }
  return out;
}

}  // namespace thinlie::subfield

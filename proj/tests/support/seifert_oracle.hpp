#pragma once

// Bounded conjugator searches in concrete models of the three base kinds,
// written without the library's normal forms:
//   free base:   Z semidirect F_r, elements (reduced word, m) multiplied letter by letter
//   torus base:  integer Heisenberg-type group, (a,b,c)(a',b',c') = (a+a', b+b', c+c'+s a b')
//   surface:     SU(1,1) matrices for the base, universal-cover lift for the fiber

#include <cstdlib>
#include <set>
#include <vector>

#include "fuchsian.hpp"
#include "sfconj/extensions.hpp"
#include "sfconj/words.hpp"

namespace oracle {

// ---------------------------------------------------------------------------
// Free base

struct FreeElem {
  std::vector<sfconj::Letter> w;
  long long m = 0;
};

class FreeModel {
 public:
  explicit FreeModel(std::vector<int> eps) : eps_(std::move(eps)) {}

  /// Right-multiplies by one letter; generator index == rank means h.
  void push(FreeElem& e, sfconj::Letter l) const {
    if (l.generator == eps_.size()) {
      e.m += l.inverted ? -1 : 1;
      return;
    }
    // w h^m x = w x h^(m eps(x)).
    e.m *= eps_[l.generator];
    if (!e.w.empty() && e.w.back().generator == l.generator && e.w.back().inverted != l.inverted) {
      e.w.pop_back();
    } else {
      e.w.push_back(l);
    }
  }

  FreeElem eval(const sfconj::Word& mixed) const {
    FreeElem e;
    for (auto l : mixed) push(e, l);
    return e;
  }

  /// {n in [-window, window] : u^-1 g u == g h^n for some u = base(|.| <= lb) h^j, |j| <= jmax}.
  std::set<long long> offsets(const sfconj::Word& base, long long m, std::size_t lb,
                              long long jmax, long long window) const {
    const std::uint32_t h = static_cast<std::uint32_t>(eps_.size());
    sfconj::Word g = base * sfconj::Word::generator(h, static_cast<int>(m));
    const FreeElem target = eval(g);
    std::set<long long> out;
    for (const auto& u : sfconj::reduced_words_up_to(eps_.size(), lb)) {
      for (long long j = -jmax; j <= jmax; ++j) {
        const sfconj::Word c = u * sfconj::Word::generator(h, static_cast<int>(j));
        const FreeElem e = eval(c.inverse() * g * c);
        if (e.w.size() != target.w.size() || !std::equal(e.w.begin(), e.w.end(), target.w.begin())) {
          continue;
        }
        const long long n = e.m - target.m;
        if (std::llabs(n) <= window) out.insert(n);
      }
    }
    return out;
  }

 private:
  std::vector<int> eps_;
};

// ---------------------------------------------------------------------------
// Torus base, trivial epsilon

struct Heis {
  long long a = 0, b = 0, c = 0;
};

class HeisModel {
 public:
  explicit HeisModel(long long s) : s_(s) {}

  Heis mul(const Heis& x, const Heis& y) const {
    return {x.a + y.a, x.b + y.b, x.c + y.c + s_ * x.a * y.b};
  }
  Heis inv(const Heis& x) const { return {-x.a, -x.b, -x.c + s_ * x.a * x.b}; }

  /// Letters 0 = x, 1 = y, 2 = h.
  Heis eval(const sfconj::Word& mixed) const {
    Heis e;
    for (auto l : mixed) {
      Heis g;
      if (l.generator == 0) g.a = 1;
      if (l.generator == 1) g.b = 1;
      if (l.generator == 2) g.c = 1;
      e = mul(e, l.inverted ? inv(g) : g);
    }
    return e;
  }

  std::set<long long> offsets(const Heis& g, long long box, long long jmax, long long window) const {
    std::set<long long> out;
    for (long long a = -box; a <= box; ++a) {
      for (long long b = -box; b <= box; ++b) {
        for (long long j = -jmax; j <= jmax; ++j) {
          const Heis c{a, b, j};
          const Heis e = mul(mul(inv(c), g), c);
          if (e.a != g.a || e.b != g.b) continue;
          const long long n = e.c - g.c;
          if (std::llabs(n) <= window) out.insert(n);
        }
      }
    }
    return out;
  }

 private:
  long long s_;
};

// ---------------------------------------------------------------------------
// Genus-2 surface base, trivial epsilon

class SurfaceModel {
 public:
  explicit SurfaceModel(long long s) : s_(s) {
    const sfconj::Word r = relator();
    unit_ = std::llround(group_.lift(r));
  }

  static sfconj::Word relator() {
    using sfconj::Letter;
    return sfconj::Word{Letter{0, false}, Letter{1, false}, Letter{0, true}, Letter{1, true},
                        Letter{2, false}, Letter{3, false}, Letter{2, true}, Letter{3, true}};
  }

  const Genus2& group() const { return group_; }
  long long unit() const { return unit_; }

  /// Relator count of a base word trivial in the surface group.
  long long degree(const sfconj::Word& trivial) const {
    const long double l = group_.lift(trivial);
    const long long k = std::llround(l);
    if (std::fabs(static_cast<double>(l - k)) > 1e-6 || k % unit_ != 0) {
      throw std::logic_error("lift of a trivial word is not a multiple of the relator lift");
    }
    return k / unit_;
  }

  /// Fiber offsets realized by conjugators u h^j with |u| <= lb (h is central).
  std::set<long long> offsets(const sfconj::Word& w, const std::vector<sfconj::Word>& conjugators,
                              const std::vector<Mat>& conj_mats, long long window) const {
    const Mat mw = group_.eval(w);
    std::set<long long> out;
    for (std::size_t i = 0; i < conjugators.size(); ++i) {
      const Mat& mu = conj_mats[i];
      if (!same_element(mu.inverse() * mw * mu, mw)) continue;
      const sfconj::Word& u = conjugators[i];
      // u^-1 (w h^m) u == w h^m h^n  <=>  u^-1 w u w^-1 == h^n.
      const long long n = s_ * degree(u.inverse() * w * u * w.inverse());
      if (std::llabs(n) <= window) out.insert(n);
    }
    return out;
  }

 private:
  Genus2 group_;
  long long s_;
  long long unit_ = 1;
};

}  // namespace oracle

#include "singlab/groebner.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "singlab/errors.hpp"

namespace singlab {

bool MonomialOrder::less(const Monomial& a, const Monomial& b) const {
  switch (kind) {
    case Kind::Grevlex: return grevlex_less(a, b);
    case Kind::Lex: return lex_less(a, b);
    case Kind::Elimination: return block_less(a, b, block);
  }
  return false;
}

std::string MonomialOrder::name() const {
  switch (kind) {
    case Kind::Grevlex: return "grevlex";
    case Kind::Lex: return "lex";
    case Kind::Elimination: return "elim(" + std::to_string(block) + ")";
  }
  return "?";
}

Ideal::Ideal(int nvars, std::vector<MultivariatePolynomial> gens) : nvars(nvars) {
  for (auto& g : gens) {
    if (g.nvars() != nvars) throw DimensionMismatch("ideal generator dimension mismatch");
    if (!g.is_zero()) generators.push_back(std::move(g));
  }
}

GroebnerBasis::GroebnerBasis(int nvars, MonomialOrder order,
                             std::vector<MultivariatePolynomial> elements)
    : nvars_(nvars), order_(order), elements_(std::move(elements)) {
  leading_.reserve(elements_.size());
  for (const auto& e : elements_) {
    const Monomial* lead = nullptr;
    for (const auto& [m, c] : e.terms())
      if (!lead || order_.less(*lead, m)) lead = &m;
    if (!lead) throw Error("zero element in Groebner basis");
    leading_.push_back(*lead);
  }
}

bool GroebnerBasis::is_unit() const {
  return elements_.size() == 1 && leading_[0].is_one();
}

namespace {

// Integer engine: primitive polynomials with positive leading coefficient,
// terms sorted descending in the active order.
struct ZTerm {
  Monomial m;
  mpz_class c;
};
inline bool operator==(const ZTerm& a, const ZTerm& b) { return a.m == b.m && a.c == b.c; }
using ZPoly = std::vector<ZTerm>;

struct Engine {
  MonomialOrder order;
  long budget;
  long used = 0;

  void charge(long amount = 1) {
    used += amount;
    if (used > budget)
      throw ResourceLimitExceeded("Groebner reduction budget exceeded (" +
                                  std::to_string(budget) + ")");
  }

  bool term_greater(const Monomial& a, const Monomial& b) const { return order.less(b, a); }

  ZPoly from_poly(const MultivariatePolynomial& p) const {
    mpz_class den_lcm(1);
    for (const auto& [m, c] : p.terms())
      mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.denominator().get_mpz_t());
    ZPoly z;
    z.reserve(p.terms().size());
    for (const auto& [m, c] : p.terms())
      z.push_back({m, mpz_class(c.numerator() * (den_lcm / c.denominator()))});
    std::sort(z.begin(), z.end(),
              [&](const ZTerm& a, const ZTerm& b) { return term_greater(a.m, b.m); });
    normalize(z);
    return z;
  }

  MultivariatePolynomial to_monic_poly(const ZPoly& z, int nvars) const {
    MultivariatePolynomial p(nvars);
    if (z.empty()) return p;
    const mpz_class& lead = z.front().c;
    for (const auto& t : z) {
      mpq_class q(t.c, lead);
      q.canonicalize();
      p.add_term(t.m, Rational(q));
    }
    return p;
  }

  static void normalize(ZPoly& z) {
    if (z.empty()) return;
    mpz_class g(0);
    for (const auto& t : z) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.c.get_mpz_t());
    if (sgn(z.front().c) < 0) g = -g;
    if (g != 1)
      for (auto& t : z) t.c /= g;
  }

  // target <- a*target - b*(shift * g), merging sorted term lists.
  ZPoly combine(const ZPoly& f, const mpz_class& a, const ZPoly& g, const mpz_class& b,
                const Monomial& shift) const {
    ZPoly out;
    out.reserve(f.size() + g.size());
    std::size_t i = 0, j = 0;
    while (i < f.size() || j < g.size()) {
      if (j == g.size()) {
        out.push_back({f[i].m, mpz_class(f[i].c * a)});
        ++i;
        continue;
      }
      Monomial gm = g[j].m * shift;
      if (i == f.size()) {
        out.push_back({std::move(gm), mpz_class(-b * g[j].c)});
        ++j;
        continue;
      }
      if (f[i].m == gm) {
        mpz_class c = f[i].c * a - b * g[j].c;
        if (c != 0) out.push_back({f[i].m, std::move(c)});
        ++i;
        ++j;
      } else if (term_greater(f[i].m, gm)) {
        out.push_back({f[i].m, mpz_class(f[i].c * a)});
        ++i;
      } else {
        out.push_back({std::move(gm), mpz_class(-b * g[j].c)});
        ++j;
      }
    }
    return out;
  }

  // Full tail reduction of f against basis; result primitive or empty.
  ZPoly reduce(ZPoly f, const std::vector<ZPoly>& basis, const std::vector<bool>& alive) {
    std::size_t pos = 0;  // every term before pos is irreducible
    while (pos < f.size()) {
      bool reduced = false;
      for (std::size_t k = 0; k < basis.size(); ++k) {
        if (!alive[k]) continue;
        const ZPoly& g = basis[k];
        if (!g.front().m.divides(f[pos].m)) continue;
        charge();
        const Monomial shift = f[pos].m.quotient(g.front().m);
        mpz_class gcd;
        mpz_gcd(gcd.get_mpz_t(), f[pos].c.get_mpz_t(), g.front().c.get_mpz_t());
        const mpz_class a = g.front().c / gcd;
        const mpz_class b = f[pos].c / gcd;
        ZPoly next = combine(f, a, g, b, shift);
        // terms before pos keep their monomials (only scaled); the term at pos cancels
        f = std::move(next);
        normalize(f);
        reduced = true;
        break;
      }
      if (!reduced) ++pos;
    }
    normalize(f);
    return f;
  }
};

struct PairKey {
  int lcm_deg;
  Monomial lcm;
  int i, j;

  bool operator<(const PairKey& o) const {
    if (lcm_deg != o.lcm_deg) return lcm_deg < o.lcm_deg;
    if (lcm != o.lcm) return lex_less(o.lcm, lcm);  // lex tie break on the lcm
    if (i != o.i) return i < o.i;
    return j < o.j;
  }
};

std::vector<ZPoly> buchberger_engine(Engine& eng, std::vector<ZPoly> gens) {
  // deterministic input order: ascending leading monomial, then term count
  std::sort(gens.begin(), gens.end(), [&](const ZPoly& a, const ZPoly& b) {
    if (a.front().m != b.front().m) return eng.order.less(a.front().m, b.front().m);
    return a.size() < b.size();
  });

  std::vector<ZPoly> basis;
  std::vector<bool> alive;
  std::set<PairKey> queue;
  std::set<std::pair<int, int>> treated;

  auto push_pairs = [&](int idx) {
    for (int i = 0; i < idx; ++i) {
      const Monomial l = Monomial::lcm(basis[static_cast<std::size_t>(i)].front().m,
                                       basis[static_cast<std::size_t>(idx)].front().m);
      queue.insert({l.degree(), l, i, idx});
    }
  };

  for (auto& g : gens) {
    if (g.empty()) continue;
    basis.push_back(std::move(g));
    alive.push_back(true);
    push_pairs(static_cast<int>(basis.size()) - 1);
  }
  if (basis.empty()) throw Error("Buchberger on the zero ideal");

  while (!queue.empty()) {
    const PairKey pk = *queue.begin();
    queue.erase(queue.begin());
    treated.insert({pk.i, pk.j});

    const ZPoly& f = basis[static_cast<std::size_t>(pk.i)];
    const ZPoly& g = basis[static_cast<std::size_t>(pk.j)];

    // product criterion
    if (f.front().m.coprime_with(g.front().m)) continue;

    // chain criterion: some other leading term divides the lcm and both
    // side pairs were already handled
    bool skip = false;
    for (int k = 0; k < static_cast<int>(basis.size()) && !skip; ++k) {
      if (k == pk.i || k == pk.j) continue;
      if (!basis[static_cast<std::size_t>(k)].front().m.divides(pk.lcm)) continue;
      auto done = [&](int a, int b) {
        if (a > b) std::swap(a, b);
        return treated.count({a, b}) > 0;
      };
      if (done(pk.i, k) && done(pk.j, k)) skip = true;
    }
    if (skip) continue;

    eng.charge();
    const Monomial sf = pk.lcm.quotient(f.front().m);
    const Monomial sg = pk.lcm.quotient(g.front().m);
    mpz_class gcd;
    mpz_gcd(gcd.get_mpz_t(), f.front().c.get_mpz_t(), g.front().c.get_mpz_t());
    // S-poly: (lc_g/gcd) * sf * f - (lc_f/gcd) * sg * g
    ZPoly shifted_f;
    shifted_f.reserve(f.size());
    for (const auto& t : f) shifted_f.push_back({t.m * sf, t.c});
    ZPoly s = eng.combine(shifted_f, mpz_class(g.front().c / gcd), g,
                          mpz_class(f.front().c / gcd), sg);
    Engine::normalize(s);
    s = eng.reduce(std::move(s), basis, alive);
    if (s.empty()) continue;

    basis.push_back(std::move(s));
    alive.push_back(true);
    push_pairs(static_cast<int>(basis.size()) - 1);
  }

  // minimalize: valid now that every S-pair reduces to zero
  std::vector<ZPoly> minimal;
  for (std::size_t k = 0; k < basis.size(); ++k) {
    bool redundant = false;
    for (std::size_t l = 0; l < basis.size() && !redundant; ++l) {
      if (l == k) continue;
      if (basis[l].front().m.divides(basis[k].front().m)) {
        // on equal leading monomials keep the earlier element
        if (basis[l].front().m == basis[k].front().m && l > k) continue;
        redundant = true;
      }
    }
    if (!redundant) minimal.push_back(basis[k]);
  }

  // interreduce tails
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t k = 0; k < minimal.size(); ++k) {
      std::vector<ZPoly> others;
      std::vector<bool> oalive;
      for (std::size_t l = 0; l < minimal.size(); ++l) {
        if (l == k) continue;
        others.push_back(minimal[l]);
        oalive.push_back(true);
      }
      if (others.empty()) break;
      ZPoly r = eng.reduce(minimal[k], others, oalive);
      if (r.empty()) throw Error("reduced basis element vanished during interreduction");
      if (!(r == minimal[k])) {
        minimal[k] = std::move(r);
        changed = true;
      }
    }
  }

  std::sort(minimal.begin(), minimal.end(), [&](const ZPoly& a, const ZPoly& b) {
    return eng.order.less(a.front().m, b.front().m);
  });
  return minimal;
}

}  // namespace

GroebnerBasis buchberger(const Ideal& ideal, const MonomialOrder& order,
                         const GroebnerOptions& opts) {
  if (ideal.is_zero()) throw Error("Buchberger requires a nonzero ideal");
  Engine eng{order, opts.budget};
  std::vector<ZPoly> gens;
  gens.reserve(ideal.generators.size());
  for (const auto& g : ideal.generators) gens.push_back(eng.from_poly(g));
  std::vector<ZPoly> reduced = buchberger_engine(eng, std::move(gens));
  std::vector<MultivariatePolynomial> out;
  out.reserve(reduced.size());
  for (const auto& z : reduced) out.push_back(eng.to_monic_poly(z, ideal.nvars));
  return GroebnerBasis(ideal.nvars, order, std::move(out));
}

MultivariatePolynomial normal_form(const MultivariatePolynomial& p, const GroebnerBasis& G) {
  if (p.nvars() != G.nvars()) throw DimensionMismatch("normal form dimension mismatch");
  const auto& order = G.order();
  MultivariatePolynomial work = p;
  MultivariatePolynomial rem(p.nvars());
  while (!work.is_zero()) {
    // leading term of the working polynomial
    const Monomial* lead = nullptr;
    const Rational* lc = nullptr;
    for (const auto& [m, c] : work.terms()) {
      if (!lead || order.less(*lead, m)) {
        lead = &m;
        lc = &c;
      }
    }
    bool reduced = false;
    for (std::size_t k = 0; k < G.elements().size(); ++k) {
      const Monomial& gl = G.leading_monomials()[k];
      if (!gl.divides(*lead)) continue;
      const Monomial shift = lead->quotient(gl);
      MultivariatePolynomial sub =
          *lc * (MultivariatePolynomial::from_term(shift, Rational(1)) * G.elements()[k]);
      work -= sub;  // basis elements are monic
      reduced = true;
      break;
    }
    if (!reduced) {
      rem.add_term(*lead, *lc);
      MultivariatePolynomial drop(p.nvars());
      drop.add_term(*lead, *lc);
      work -= drop;
    }
  }
  return rem;
}

bool in_ideal(const MultivariatePolynomial& p, const GroebnerBasis& G) {
  return normal_form(p, G).is_zero();
}

Ideal eliminate(const Ideal& ideal, int first_k, const GroebnerOptions& opts) {
  if (first_k <= 0 || first_k >= ideal.nvars)
    throw IndexOutOfRange("elimination block must satisfy 0 < k < n");
  GroebnerBasis G = buchberger(ideal, MonomialOrder::elimination(first_k), opts);
  std::vector<MultivariatePolynomial> kept;
  for (const auto& e : G.elements()) {
    bool free_of_block = true;
    for (int v = 0; v < first_k && free_of_block; ++v)
      if (e.uses_variable(v)) free_of_block = false;
    if (free_of_block) kept.push_back(e);
  }
  return Ideal(ideal.nvars, std::move(kept));
}

Ideal saturate(const Ideal& ideal, const MultivariatePolynomial& g,
               const GroebnerOptions& opts) {
  if (g.is_zero()) throw Error("saturation by the zero polynomial");
  if (g.nvars() != ideal.nvars) throw DimensionMismatch("saturation dimension mismatch");
  const int n = ideal.nvars;
  std::vector<MultivariatePolynomial> gens;
  gens.reserve(ideal.generators.size() + 1);
  for (const auto& p : ideal.generators) gens.push_back(p.with_variable_inserted(0));
  // 1 - y*g with the auxiliary variable y in front
  MultivariatePolynomial aux = MultivariatePolynomial::constant(n + 1, Rational(1));
  aux -= MultivariatePolynomial::variable(n + 1, 0) * g.with_variable_inserted(0);
  gens.push_back(std::move(aux));

  GroebnerBasis G = buchberger(Ideal(n + 1, std::move(gens)), MonomialOrder::elimination(1), opts);
  std::vector<MultivariatePolynomial> kept;
  for (const auto& e : G.elements())
    if (!e.uses_variable(0)) kept.push_back(e.with_variable_removed(0));
  return Ideal(n, std::move(kept));
}

bool is_zero_dimensional(const GroebnerBasis& G) {
  const int n = G.nvars();
  for (int v = 0; v < n; ++v) {
    bool found = false;
    for (const auto& lm : G.leading_monomials()) {
      if (lm.exponent(v) == lm.degree()) {  // pure power of v (or the unit)
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

std::vector<Monomial> quotient_basis(const GroebnerBasis& G) {
  const int n = G.nvars();
  std::vector<int> bound(static_cast<std::size_t>(n), -1);
  for (int v = 0; v < n; ++v) {
    for (const auto& lm : G.leading_monomials()) {
      if (lm.exponent(v) == lm.degree()) {
        const int e = lm.exponent(v);
        if (bound[static_cast<std::size_t>(v)] < 0 || e < bound[static_cast<std::size_t>(v)])
          bound[static_cast<std::size_t>(v)] = e;
      }
    }
    if (bound[static_cast<std::size_t>(v)] < 0)
      throw NotZeroDimensional("staircase is infinite in variable z" + std::to_string(v + 1));
  }

  std::vector<Monomial> staircase;
  std::vector<int> e(static_cast<std::size_t>(n), 0);
  while (true) {
    Monomial m{std::vector<int>(e)};
    bool divisible = false;
    for (const auto& lm : G.leading_monomials())
      if (lm.divides(m)) {
        divisible = true;
        break;
      }
    if (!divisible) staircase.push_back(std::move(m));
    int v = 0;
    while (v < n) {
      if (++e[static_cast<std::size_t>(v)] < bound[static_cast<std::size_t>(v)]) break;
      e[static_cast<std::size_t>(v)] = 0;
      ++v;
    }
    if (v == n) break;
  }
  std::sort(staircase.begin(), staircase.end(), grevlex_less);
  return staircase;
}

long multiplicity_dim(const Ideal& ideal, const GroebnerOptions& opts) {
  GroebnerBasis G = buchberger(ideal, MonomialOrder::grevlex(), opts);
  return static_cast<long>(quotient_basis(G).size());
}

}  // namespace singlab

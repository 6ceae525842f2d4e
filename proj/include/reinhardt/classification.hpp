#pragma once

// Decides whether a domain is, up to dilations and permutations of the
// coordinates, of the form
//   |z^1|^2 + sum_j r_j |z^j|^{2 m_j} + sum_l a_l prod_j |z^j|^{2 l_j} < 1,
// with sum_j l_j / m_j = 1 for every cross term.

#include "reinhardt/domain.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace reinhardt {

namespace detail {

// Q with the non-representative variables of every block set to zero, written
// as a polynomial in one variable per block (variable b = representative of block b).
inline ModuliPolynomial block_reduction(const ModuliPolynomial& q, const BlockStructure& blocks) {
  std::set<std::size_t> zeroed;
  std::vector<std::size_t> target(q.num_vars(), 0);
  for (std::size_t b = 0; b < blocks.count(); ++b) {
    const auto& block = blocks[b];
    const std::size_t rep = *std::min_element(block.begin(), block.end());
    for (std::size_t i : block) {
      target[i] = b;
      if (i != rep) zeroed.insert(i);
    }
  }
  return q.restrict_to_subspace(zeroed).remap(blocks.count(), target);
}

// Substitutes block sums back into a block polynomial.
inline ModuliPolynomial expand_block_sums(const ModuliPolynomial& f, const BlockStructure& blocks,
                                          std::size_t n) {
  std::vector<ModuliPolynomial> images;
  for (std::size_t b = 0; b < blocks.count(); ++b) {
    ModuliPolynomial s(n);
    for (std::size_t i : blocks[b]) s = s + ModuliPolynomial::variable(n, i);
    images.push_back(std::move(s));
  }
  return f.compose(images);
}

inline bool expressible_in_blocks(const ModuliPolynomial& q, const BlockStructure& blocks) {
  return expand_block_sums(block_reduction(q, blocks), blocks, q.num_vars()) == q;
}

// Blocks sorted by smallest member, members ascending.
inline BlockStructure normalized_blocks(std::vector<std::vector<std::size_t>> blocks, std::size_t n) {
  for (auto& b : blocks) std::sort(b.begin(), b.end());
  std::sort(blocks.begin(), blocks.end());
  return {std::move(blocks), n};
}

}  // namespace detail

/// Validates declared blocks, or infers the coarsest partition of the
/// coordinates such that Q is a polynomial in the block sums. Ties between
/// partitions with equally few blocks go to the lexicographically smallest.
inline BlockStructure detect_block_structure(const DomainSpec& spec) {
  const std::size_t n = spec.dim();
  if (spec.declared_blocks()) {
    const BlockStructure declared = detail::normalized_blocks(spec.declared_blocks()->blocks(), n);
    if (!detail::expressible_in_blocks(spec.q(), declared))
      throw DomainError("Q is not a polynomial in the moduli sums of the declared blocks " + declared.str());
    return declared;
  }
  constexpr std::size_t kExhaustiveLimit = 8;
  if (n <= kExhaustiveLimit) {
    std::optional<BlockStructure> best;
    std::vector<std::size_t> code(n, 0);  // restricted growth string
    while (true) {
      const std::size_t count = *std::max_element(code.begin(), code.end()) + 1;
      if (!best || count <= best->count()) {
        std::vector<std::vector<std::size_t>> blocks(count);
        for (std::size_t i = 0; i < n; ++i) blocks[code[i]].push_back(i);
        BlockStructure candidate = detail::normalized_blocks(std::move(blocks), n);
        if (detail::expressible_in_blocks(spec.q(), candidate)) {
          if (!best || candidate.count() < best->count() ||
              (candidate.count() == best->count() && candidate.blocks() < best->blocks()))
            best = std::move(candidate);
        }
      }
      // Next restricted growth string.
      std::size_t i = n;
      while (i-- > 1) {
        const std::size_t prefix_max = *std::max_element(code.begin(), code.begin() + static_cast<long>(i));
        if (code[i] <= prefix_max) {
          ++code[i];
          std::fill(code.begin() + static_cast<long>(i) + 1, code.end(), 0);
          break;
        }
      }
      if (i == 0) break;
    }
    return *best;
  }
  // Larger n: greedy pairwise merging from singletons.
  std::vector<std::vector<std::size_t>> blocks;
  for (std::size_t i = 0; i < n; ++i) blocks.push_back({i});
  bool merged = true;
  while (merged) {
    merged = false;
    for (std::size_t a = 0; a < blocks.size() && !merged; ++a) {
      for (std::size_t b = a + 1; b < blocks.size() && !merged; ++b) {
        auto trial = blocks;
        trial[a].insert(trial[a].end(), trial[b].begin(), trial[b].end());
        trial.erase(trial.begin() + static_cast<long>(b));
        BlockStructure candidate = detail::normalized_blocks(trial, n);
        if (detail::expressible_in_blocks(spec.q(), candidate)) {
          blocks = candidate.blocks();
          merged = true;
        }
      }
    }
  }
  return detail::normalized_blocks(std::move(blocks), n);
}

/// Dilation-permutation witness W with Q_original(W(u)) = Q_canonical(u):
/// u_i = moduli_scalars[i] * u'_{target[i]}.
struct DilationWitness {
  std::vector<std::size_t> target;     // canonical index of original coordinate i
  std::vector<Radical> moduli_scalars;  // per original coordinate

  /// z_i = z_scalar_i * z'_{target[i]}
  std::vector<Radical> z_scalars() const {
    std::vector<Radical> out;
    for (const auto& s : moduli_scalars) out.push_back(s.pow(Rational(1, 2)));
    return out;
  }
  bool is_identity() const {
    for (std::size_t i = 0; i < target.size(); ++i)
      if (target[i] != i || !(moduli_scalars[i] == Radical(1))) return false;
    return true;
  }
  /// The witness as a moduli map, when every scalar is rational.
  std::optional<MonomialMap> moduli_map() const {
    std::vector<Rational> s;
    for (const auto& r : moduli_scalars) {
      if (!r.is_rational()) return std::nullopt;
      s.push_back(r.to_rational());
    }
    return MonomialMap::permutation(target, s);
  }
};

using CrossTerms = std::map<Exponent, Rational>;
using RadicalCrossTerms = std::map<Exponent, Radical>;

struct ModelForm {
  /// blocks[0] is the distinguished first block; blocks[j] for j >= 1 carry m[j-1].
  BlockStructure blocks = BlockStructure::singletons(1);
  /// Coefficient of u_i in Q for i in the first block (after constant normalisation).
  std::vector<Rational> first_coefficients;
  std::vector<int> m;
  std::vector<Rational> r;
  /// (l_2, ..., l_p) -> a_l, pure terms excluded
  CrossTerms cross_terms;
  /// Q(0) before normalisation; Q is replaced by (Q - c0) / (1 - c0).
  Rational constant_shift = 0;
  DilationWitness witness;
  /// Cross terms after the witness is applied (pure coefficients 1).
  RadicalCrossTerms canonical_cross_terms;

  std::size_t block_count() const { return blocks.count(); }
  std::size_t first_block_size() const { return blocks[0].size(); }
  bool is_ball() const { return blocks.count() == 1; }
};

enum class VerdictKind { ball, model, not_model, unknown };

inline const char* to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::ball: return "Ball";
    case VerdictKind::model: return "Model";
    case VerdictKind::not_model: return "NotModel";
    case VerdictKind::unknown: return "Unknown";
  }
  return "?";
}

struct ClassificationVerdict {
  VerdictKind kind = VerdictKind::unknown;
  std::optional<ModelForm> model;  // Ball and Model
  std::string reason;              // NotModel and Unknown
  std::vector<std::string> diagnostics;
};

namespace detail {

// Canonical cross terms for a given block order (order[k] = model block index
// placed at canonical position k+1) with r_j normalised to 1.
inline RadicalCrossTerms canonical_cross(const ModelForm& mf, const std::vector<std::size_t>& order) {
  RadicalCrossTerms out;
  for (const auto& [l, a] : mf.cross_terms) {
    Radical c(a);
    Exponent key(l.size(), 0);
    for (std::size_t k = 0; k < order.size(); ++k) {
      const std::size_t j = order[k];
      key[k] = l[j];
      c = c * Radical(mf.r[j]).pow(Rational(-l[j], mf.m[j]));
    }
    out.emplace(std::move(key), c);
  }
  return out;
}

inline bool cross_less(const RadicalCrossTerms& a, const RadicalCrossTerms& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), [](const auto& x, const auto& y) {
    if (x.first != y.first) return x.first < y.first;
    return x.second < y.second;
  });
}

// Orders the non-first blocks by (size, m), breaking ties by the smallest
// canonical cross-term list, and fills the witness.
inline void finish_canonical(ModelForm& mf) {
  const std::size_t p1 = mf.m.size();
  std::vector<std::size_t> order(p1);
  std::iota(order.begin(), order.end(), 0);
  auto key = [&](std::size_t j) { return std::make_pair(mf.blocks[j + 1].size(), mf.m[j]); };
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return key(a) < key(b); });
  // Runs of equal keys may be permuted freely.
  std::vector<std::pair<std::size_t, std::size_t>> runs;
  for (std::size_t s = 0; s < p1;) {
    std::size_t e = s + 1;
    while (e < p1 && key(order[e]) == key(order[s])) ++e;
    if (e - s > 1) runs.emplace_back(s, e);
    s = e;
  }
  std::vector<std::size_t> best = order;
  RadicalCrossTerms best_cross = canonical_cross(mf, order);
  constexpr std::size_t kTieLimit = 40320;
  std::size_t visited = 0;
  std::function<void(std::size_t)> search = [&](std::size_t run) {
    if (visited > kTieLimit) return;
    if (run == runs.size()) {
      ++visited;
      auto cross = canonical_cross(mf, order);
      if (cross_less(cross, best_cross)) {
        best_cross = std::move(cross);
        best = order;
      }
      return;
    }
    auto first = order.begin() + static_cast<long>(runs[run].first);
    auto last = order.begin() + static_cast<long>(runs[run].second);
    std::sort(first, last);
    do {
      search(run + 1);
    } while (std::next_permutation(first, last));
  };
  if (!runs.empty()) search(0);

  const std::size_t n = mf.blocks.dimension();
  mf.witness.target.assign(n, 0);
  mf.witness.moduli_scalars.assign(n, Radical(1));
  std::size_t next = 0;
  for (std::size_t t = 0; t < mf.blocks[0].size(); ++t) {
    const std::size_t i = mf.blocks[0][t];
    mf.witness.target[i] = next++;
    mf.witness.moduli_scalars[i] = Radical(Rational(1) / mf.first_coefficients[t]);
  }
  for (std::size_t j : best) {
    const Radical s = Radical(mf.r[j]).pow(Rational(-1, mf.m[j]));
    for (std::size_t i : mf.blocks[j + 1]) {
      mf.witness.target[i] = next++;
      mf.witness.moduli_scalars[i] = s;
    }
  }
  mf.canonical_cross_terms = std::move(best_cross);
}

}  // namespace detail

/// Classifies spec against the normal form. Throws DomainError if the origin
/// is not in the domain or the domain is proven unbounded. When a regularity
/// report without failures is supplied, NotModel verdicts state the
/// consequence for the automorphism group.
inline ClassificationVerdict classify(const DomainSpec& spec, const RegularityReport* regularity = nullptr,
                                      const BoundednessOptions& bounded_opt = {}) {
  ClassificationVerdict v;
  const std::size_t n = spec.dim();
  const Rational c0 = spec.q().constant_term();
  if (c0 >= 1) throw DomainError("the origin is not in the domain: Q(0) = " + to_string(c0) + " >= 1");
  ModuliPolynomial q = spec.q();
  if (c0 != 0) {
    q = Rational(1) / (1 - c0) * (q - ModuliPolynomial::constant(n, c0));
    v.diagnostics.push_back("constant term normalised: Q -> (Q - " + to_string(c0) + ") / (1 - " +
                            to_string(c0) + ")");
  }
  const DomainSpec work(n, q, spec.declared_blocks(), spec.name());

  const auto cert = boundedness_certificate(work, bounded_opt);
  if (cert.kind == BoundednessKind::unbounded_witness) throw DomainError("the domain is unbounded: " + cert.detail);
  if (cert.kind == BoundednessKind::unknown) {
    v.kind = VerdictKind::unknown;
    v.reason = "boundedness unresolved: " + cert.detail;
    return v;
  }
  v.diagnostics.push_back("bounded: " + cert.detail);

  std::optional<BlockStructure> blocks;
  try {
    blocks = detect_block_structure(work);
  } catch (const DomainError& e) {
    v.kind = VerdictKind::unknown;
    v.reason = e.what();
    return v;
  }
  v.diagnostics.push_back("blocks " + blocks->str());

  auto not_model = [&](std::string why) {
    v.kind = VerdictKind::not_model;
    v.reason = std::move(why);
    if (regularity && regularity->regular())
      v.reason += "; compact automorphism group if smoothly bounded";
    return v;
  };

  const std::size_t p = blocks->count();
  const ModuliPolynomial f = detail::block_reduction(q, *blocks);

  // Blocks entering only through a positive linear term form the first block.
  std::vector<bool> linear_only(p, false);
  std::vector<Rational> linear_coeff(p, Rational(0));
  for (std::size_t b = 0; b < p; ++b) {
    bool only = true;
    for (const auto& [e, c] : f.terms()) {
      if (e[b] == 0) continue;
      if (e[b] == 1 && total_degree(e) == 1) linear_coeff[b] = c;
      else only = false;
    }
    linear_only[b] = only && linear_coeff[b] > 0;
  }
  std::vector<std::size_t> first_blocks, rest;
  for (std::size_t b = 0; b < p; ++b) (linear_only[b] ? first_blocks : rest).push_back(b);
  if (first_blocks.empty())
    return not_model("no block enters Q only through a positive linear term in its moduli sum");

  ModelForm mf;
  std::vector<std::pair<std::size_t, Rational>> first;
  for (std::size_t b : first_blocks)
    for (std::size_t i : (*blocks)[b]) first.emplace_back(i, linear_coeff[b]);
  std::sort(first.begin(), first.end());
  std::vector<std::vector<std::size_t>> model_blocks(1);
  for (const auto& [i, c] : first) {
    model_blocks[0].push_back(i);
    mf.first_coefficients.push_back(c);
  }
  for (std::size_t b : rest) model_blocks.push_back((*blocks)[b]);
  mf.blocks = BlockStructure(model_blocks, n);
  mf.constant_shift = c0;

  // Pure powers and weights of the remaining blocks.
  for (std::size_t k = 0; k < rest.size(); ++k) {
    const std::size_t b = rest[k];
    int lowest = 0;
    Rational coeff = 0;
    for (const auto& [e, c] : f.terms()) {
      if (e[b] == 0 || total_degree(e) != e[b]) continue;
      if (lowest == 0 || e[b] < lowest) {
        lowest = e[b];
        coeff = c;
      }
    }
    std::string label = "block " + std::to_string(k + 2) + " [";
    for (std::size_t t = 0; t < (*blocks)[b].size(); ++t)
      label += (t ? "," : "") + std::to_string((*blocks)[b][t] + 1);
    label += "]";
    if (lowest == 0) return not_model(label + " has no pure power term r_j (moduli sum)^m_j");
    if (coeff <= 0) return not_model(label + " has non-positive pure coefficient " + to_string(coeff));
    mf.m.push_back(lowest);
    mf.r.push_back(coeff);
  }

  // P in the block sums of the remaining blocks must be weighted homogeneous.
  const std::size_t p1 = rest.size();
  ModuliPolynomial::Terms p_terms;
  for (const auto& [e, c] : f.terms()) {
    bool in_first = false;
    for (std::size_t b : first_blocks) in_first = in_first || e[b] != 0;
    if (in_first) continue;
    Exponent l(p1, 0);
    for (std::size_t k = 0; k < p1; ++k) l[k] = e[rest[k]];
    p_terms.emplace(std::move(l), c);
  }
  if (p1 > 0) {
    const ModuliPolynomial pb(p1, p_terms);
    const WeightVector w = WeightVector::from_exponents(mf.m);
    if (!is_weighted_homogeneous(pb, w)) {
      const auto parts = weighted_decompose(pb, w);
      const auto& [e, c] = *parts.remainder.terms().begin();
      std::string mono;
      for (std::size_t k = 0; k < p1; ++k)
        if (e[k] != 0) mono += (mono.empty() ? "" : "*") + std::string("S") + std::to_string(k + 2) +
                               (e[k] == 1 ? "" : "^" + std::to_string(e[k]));
      if (mono.empty()) mono = "1";
      return not_model("weight equation fails: monomial " + mono + " has weight " + to_string(w.weight_of(e)) +
                       " != 1 for m = " + [&] {
                         std::string s = "(";
                         for (std::size_t k = 0; k < p1; ++k) s += (k ? "," : "") + std::to_string(mf.m[k]);
                         return s + ")";
                       }());
    }
    for (const auto& [l, c] : p_terms) {
      const bool pure = std::count_if(l.begin(), l.end(), [](int x) { return x != 0; }) == 1;
      if (pure) continue;
      mf.cross_terms.emplace(l, c);
    }
  }

  detail::finish_canonical(mf);
  v.kind = p1 == 0 ? VerdictKind::ball : VerdictKind::model;
  v.model = std::move(mf);
  return v;
}

/// Slice through blocks 1 and j (1-based, j >= 2) equals
/// sum_{i in block 1} c_i u_i + r_j (block j moduli sum)^{m_j}.
inline bool verify_slice_form(const DomainSpec& spec, const ModelForm& model, std::size_t j) {
  if (j < 2 || j > model.block_count()) return false;
  const std::size_t n = spec.dim();
  std::set<std::size_t> zeroed;
  for (std::size_t b = 1; b < model.block_count(); ++b)
    if (b != j - 1)
      for (std::size_t i : model.blocks[b]) zeroed.insert(i);
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < n; ++i)
    if (!zeroed.count(i)) kept.push_back(i);
  const std::size_t k = kept.size();
  auto local = [&](std::size_t i) {
    return static_cast<std::size_t>(std::lower_bound(kept.begin(), kept.end(), i) - kept.begin());
  };
  ModuliPolynomial expected(k);
  for (std::size_t t = 0; t < model.first_block_size(); ++t)
    expected = expected + model.first_coefficients[t] * ModuliPolynomial::variable(k, local(model.blocks[0][t]));
  ModuliPolynomial sum(k);
  for (std::size_t i : model.blocks[j - 1]) sum = sum + ModuliPolynomial::variable(k, local(i));
  expected = expected + model.r[j - 2] * sum.pow(static_cast<unsigned>(model.m[j - 2]));

  ModuliPolynomial slice = spec.q().restrict_to_subspace(zeroed);
  std::vector<std::size_t> target(n, 0);
  for (std::size_t i : kept) target[i] = local(i);
  slice = slice.remap(k, target);
  const Rational c0 = model.constant_shift;
  if (c0 != 0) slice = Rational(1) / (1 - c0) * (slice - ModuliPolynomial::constant(k, c0));
  return slice == expected;
}

struct CanonicalForm {
  VerdictKind kind = VerdictKind::ball;
  BlockStructure blocks = BlockStructure::singletons(1);
  std::vector<int> m;
  RadicalCrossTerms cross_terms;
  DilationWitness witness;
  /// Present when every canonical coefficient is rational.
  std::optional<DomainSpec> spec;
  /// Canonical Q written out; radical coefficients as (p/q)^(1/k).
  std::string q_text;
};

/// Canonical representative: first block coefficients 1, pure coefficients 1,
/// blocks sorted by (size, m), ties broken by the cross-term list.
inline CanonicalForm canonical_form(const DomainSpec& spec, const ClassificationVerdict& verdict) {
  if (!verdict.model) throw Error("canonical form requires a Ball or Model verdict");
  const ModelForm& mf = *verdict.model;
  CanonicalForm out;
  out.kind = verdict.kind;
  out.witness = mf.witness;
  out.cross_terms = mf.canonical_cross_terms;
  const std::size_t n = spec.dim();

  // Canonical block layout follows the witness targets.
  std::vector<std::vector<std::size_t>> blocks;
  std::vector<std::pair<std::size_t, std::size_t>> order;  // (first target, model block)
  for (std::size_t b = 0; b < mf.block_count(); ++b) {
    std::size_t lo = n;
    for (std::size_t i : mf.blocks[b]) lo = std::min(lo, mf.witness.target[i]);
    order.emplace_back(lo, b);
  }
  std::sort(order.begin(), order.end());
  for (const auto& [lo, b] : order) {
    std::vector<std::size_t> block;
    for (std::size_t t = 0; t < mf.blocks[b].size(); ++t) block.push_back(lo + t);
    blocks.push_back(block);
    if (b > 0) out.m.push_back(mf.m[b - 1]);
  }
  // A single first block needs no declaration beyond the default; keep it
  // explicit so the canonical spec round-trips through classify unchanged.
  out.blocks = BlockStructure(blocks, n);

  ModuliPolynomial::Terms terms;
  bool rational = true;
  std::string text;
  auto append = [&](const Radical& c, const std::string& mono) {
    const bool neg = c.sign() < 0;
    const Radical mag = neg ? -c : c;
    std::string coeff = mag == Radical(1) && !mono.empty() ? "" : mag.str();
    if (!coeff.empty() && !mono.empty()) coeff += "*";
    if (text.empty()) text = (neg ? "-" : "") + coeff + mono;
    else text += (neg ? " - " : " + ") + coeff + mono;
  };
  for (std::size_t i : blocks[0]) {
    Exponent e(n, 0);
    e[i] = 1;
    terms.emplace(e, Rational(1));
    append(Radical(1), "u" + std::to_string(i + 1));
  }
  for (std::size_t k = 1; k < blocks.size(); ++k) {
    ModuliPolynomial s(n);
    for (std::size_t i : blocks[k]) s = s + ModuliPolynomial::variable(n, i);
    const ModuliPolynomial power = s.pow(static_cast<unsigned>(out.m[k - 1]));
    for (const auto& [e, c] : power.terms()) terms[e] += c;
    std::string sum;
    for (std::size_t i : blocks[k]) sum += (sum.empty() ? "" : "+") + std::string("u") + std::to_string(i + 1);
    if (blocks[k].size() > 1) sum = "(" + sum + ")";
    append(Radical(1), sum + (out.m[k - 1] == 1 ? "" : "^" + std::to_string(out.m[k - 1])));
  }
  for (const auto& [l, c] : out.cross_terms) {
    std::string mono;
    ModuliPolynomial prod = ModuliPolynomial::constant(n, 1);
    for (std::size_t k = 0; k < l.size(); ++k) {
      if (l[k] == 0) continue;
      ModuliPolynomial s(n);
      std::string sum;
      for (std::size_t i : blocks[k + 1]) {
        s = s + ModuliPolynomial::variable(n, i);
        sum += (sum.empty() ? "" : "+") + std::string("u") + std::to_string(i + 1);
      }
      if (blocks[k + 1].size() > 1) sum = "(" + sum + ")";
      prod = prod * s.pow(static_cast<unsigned>(l[k]));
      mono += (mono.empty() ? "" : "*") + sum + (l[k] == 1 ? "" : "^" + std::to_string(l[k]));
    }
    append(c, mono);
    if (!c.is_rational()) {
      rational = false;
      continue;
    }
    const Rational a = c.to_rational();
    for (const auto& [e, pc] : prod.terms()) terms[e] += a * pc;
  }
  out.q_text = text;
  if (rational) out.spec = DomainSpec(n, ModuliPolynomial(n, terms), out.blocks, spec.name());
  return out;
}

inline CanonicalForm canonical_form(const DomainSpec& spec) {
  const auto verdict = classify(spec);
  if (!verdict.model) throw Error("canonical form requires a Ball or Model verdict, got " +
                                  std::string(to_string(verdict.kind)) + ": " + verdict.reason);
  return canonical_form(spec, verdict);
}

/// Boundary points of the closure reached by the Moebius orbits: the sphere
/// {|z^1| = 1, z^j = 0 for j >= 2} of real dimension 2 n_1 - 1.
struct AccumulationSet {
  std::vector<std::size_t> sphere_coordinates;  // first block
  std::vector<std::size_t> zero_coordinates;
  int dimension = 0;
  std::string description;
};

inline AccumulationSet accumulation_set(const ModelForm& model) {
  AccumulationSet s;
  s.sphere_coordinates = model.blocks[0];
  for (std::size_t b = 1; b < model.block_count(); ++b)
    for (std::size_t i : model.blocks[b]) s.zero_coordinates.push_back(i);
  std::sort(s.zero_coordinates.begin(), s.zero_coordinates.end());
  s.dimension = 2 * static_cast<int>(model.first_block_size()) - 1;
  std::string lhs;
  for (std::size_t i : s.sphere_coordinates) lhs += (lhs.empty() ? "" : " + ") + std::string("|z") + std::to_string(i + 1) + "|^2";
  s.description = "{" + lhs + " = 1";
  for (std::size_t i : s.zero_coordinates) s.description += ", z" + std::to_string(i + 1) + " = 0";
  s.description += "}";
  return s;
}

}  // namespace reinhardt

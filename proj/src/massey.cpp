#include "macx/massey.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <functional>
#include <mutex>
#include <numeric>
#include <random>
#include <set>
#include <unordered_map>

#include "macx/canonical.hpp"
#include "macx/census.hpp"
#include "macx/errors.hpp"
#include "macx/parallel.hpp"

namespace macx {

namespace {

using ComplexPtr = std::shared_ptr<const SimplicialComplex>;

// Positions of a defining system in filling order: diagonals l − k = 1, 2,
// ..., ascending k within a diagonal.
std::vector<Position> positions(int n) {
  std::vector<Position> out;
  for (int d = 1; d <= n; ++d)
    for (int k = 1; k + d <= n + 1; ++k)
      if (!(k == 1 && k + d == n + 1)) out.emplace_back(k, k + d);
  return out;
}

// Where c_{k,l} lives: the union of the input multidegrees (valid only when
// they are disjoint) and its u-count. The product itself sits one degree
// above c_{1,n+1}: shape(inputs, 1, n + 1, 1).
struct Shape {
  bool valid = false;
  Mask j = 0;
  int u = 0;
};

Shape shape(const std::vector<Cochain>& inputs, int k, int l, int shift = 0) {
  Shape s;
  int degree = 0;
  for (int t = k; t < l; ++t) {
    const Mask mj = inputs[t - 1].multidegree();
    if (s.j & mj) return Shape{};
    s.j |= mj;
    degree += inputs[t - 1].degree();
  }
  degree -= l - k - 1 - shift;
  s.u = 2 * popcount(s.j) - degree;
  s.valid = s.u >= 0 && s.u <= popcount(s.j);
  return s;
}

std::vector<Cochain> cocycle_basis(const ComplexPtr& k, const Coefficients& field, const Shape& s) {
  std::vector<Cochain> out;
  if (!s.valid) return out;
  const auto basis = component_basis(*k, s.j, s.u);
  if (basis.empty()) return out;
  std::vector<std::vector<Scalar>> kernel;
  const IntMatrix down = koszul_differential_matrix(*k, s.j, s.u);
  if (down.rows()) {
    kernel = kernel_basis(field, down.to_field(field));
  } else {
    for (std::size_t t = 0; t < basis.size(); ++t) {
      std::vector<Scalar> e(basis.size());
      e[t] = 1;
      kernel.push_back(std::move(e));
    }
  }
  for (const auto& x : kernel) out.push_back(from_vector(x, basis, k, field));
  return out;
}

void check_inputs(const std::vector<Cochain>& inputs) {
  for (std::size_t t = 0; t < inputs.size(); ++t) {
    const Cochain& a = inputs[t];
    if (a.is_zero()) throw InputError("input " + std::to_string(t + 1) + " is the zero cochain");
    if (!(a.field() == inputs[0].field())) throw InputError("inputs over different fields");
    if (a.complex() != inputs[0].complex() && !(*a.complex() == *inputs[0].complex()))
      throw InputError("inputs over different complexes");
    if (!is_cocycle(a)) throw InputError("input " + std::to_string(t + 1) + " is not a cocycle");
  }
}

UniquenessCertificate interior_components(const std::vector<Cochain>& inputs) {
  const int n = static_cast<int>(inputs.size());
  UniquenessCertificate cert;
  for (auto [k, l] : positions(n)) {
    if (l - k < 2) continue;
    ComponentCheck c;
    c.position = {k, l};
    const Shape s = shape(inputs, k, l);
    if (s.valid) {
      c.multidegree = s.j;
      c.u_count = s.u;
      const auto h = component_cohomology(inputs[0].complex(), s.u, s.j, inputs[0].field(), false);
      c.cocycle_dim = h.cocycle_dim;
      c.coboundary_dim = h.coboundary_dim;
    }
    cert.components.push_back(c);
  }
  return cert;
}

bool all_acyclic(const UniquenessCertificate& cert) {
  return std::all_of(cert.components.begin(), cert.components.end(),
                     [](const ComponentCheck& c) { return c.acyclic(); });
}

Cochain zero_like(const Cochain& c) { return Cochain(c.complex(), c.field()); }

// Fills a system stage by stage; `pick` chooses a solution of d(x) = rhs
// from a particular solution and the cocycles of the entry's component.
using Picker = std::function<Cochain(const Cochain&, Position)>;

struct Attempt {
  std::optional<DefiningSystem> system;
  std::optional<Position> stuck;
};

Attempt fill(const std::vector<Cochain>& inputs, const Picker& pick) {
  const int n = static_cast<int>(inputs.size());
  DefiningSystem sys;
  sys.order = n;
  for (int t = 1; t <= n; ++t) sys.entries.emplace(Position{t, t + 1}, inputs[t - 1]);
  for (auto [k, l] : positions(n)) {
    if (l - k < 2) continue;
    const Cochain r = sys.rhs(k, l);
    auto x = solve_coboundary(r);
    if (!x) return {std::nullopt, Position{k, l}};
    sys.entries.emplace(Position{k, l}, pick(*x, {k, l}));
  }
  return {std::move(sys), std::nullopt};
}

// Reduction modulo the span of given vectors, via a reduced echelon basis.
class QuotientForm {
 public:
  QuotientForm(const Coefficients& field, const std::vector<std::vector<Scalar>>& span, std::size_t dim)
      : field_(field) {
    if (span.empty()) return;
    Matrix rows(span.size(), dim);
    for (std::size_t r = 0; r < span.size(); ++r)
      for (std::size_t c = 0; c < dim; ++c) rows(r, c) = span[r][c];
    echelon_ = row_reduce(field, rows);
  }
  std::vector<Scalar> reduce(std::vector<Scalar> v) const {
    for (std::size_t r = 0; r < echelon_.pivots.size(); ++r) {
      const Scalar f = v[echelon_.pivots[r]];
      if (f == 0) continue;
      for (std::size_t c = 0; c < v.size(); ++c) v[c] = field_.reduce(v[c] - f * echelon_.reduced(r, c));
    }
    return v;
  }

 private:
  Coefficients field_;
  Echelon echelon_;
};

std::vector<std::vector<Scalar>> coboundary_span(const SimplicialComplex& k, const Coefficients& field,
                                                 const Shape& s) {
  std::vector<std::vector<Scalar>> out;
  if (!s.valid) return out;
  const Matrix up = koszul_differential_matrix(k, s.j, s.u + 1).to_field(field);
  for (std::size_t c = 0; c < up.cols(); ++c) out.push_back(up.column(c));
  return out;
}

// Every defining system over F_2 (choices x0 + any cocycle at every interior
// entry). Stops once more than `bound` leaves were reached.
struct Exhaustive {
  bool complete = true;
  bool any_defined = false;
  bool contains_zero = false;
  std::size_t class_count = 0;
};

Exhaustive exhaustive_f2(const std::vector<Cochain>& inputs_any, std::size_t bound) {
  const Coefficients f2 = Coefficients::prime(2);
  std::vector<Cochain> inputs;
  for (const auto& a : inputs_any) inputs.push_back(change_field(a, f2));
  Exhaustive out;
  for (const auto& a : inputs)
    if (a.is_zero() || !is_cocycle(a)) {
      out.complete = false;
      return out;
    }
  const int n = static_cast<int>(inputs.size());
  const ComplexPtr& k = inputs[0].complex();
  std::vector<Position> interior;
  std::map<Position, std::vector<Cochain>> kernels;
  for (auto p : positions(n))
    if (p.second - p.first >= 2) {
      interior.push_back(p);
      kernels[p] = cocycle_basis(k, f2, shape(inputs, p.first, p.second));
    }
  const Shape last = shape(inputs, 1, n + 1, 1);
  std::vector<Monomial> last_basis;
  if (last.valid) last_basis = component_basis(*k, last.j, last.u);
  const QuotientForm quotient(f2, coboundary_span(*k, f2, last), last_basis.size());
  std::set<std::vector<Scalar>> classes;
  std::size_t leaves = 0;

  DefiningSystem sys;
  sys.order = n;
  for (int t = 1; t <= n; ++t) sys.entries.emplace(Position{t, t + 1}, inputs[t - 1]);
  std::function<void(std::size_t)> walk = [&](std::size_t idx) {
    if (!out.complete) return;
    if (idx == interior.size()) {
      out.any_defined = true;
      if (++leaves > bound) {
        out.complete = false;
        return;
      }
      const Cochain rep = sys.representative();
      std::vector<Scalar> v = rep.is_zero() ? std::vector<Scalar>(last_basis.size()) : to_vector(rep, last_basis);
      classes.insert(quotient.reduce(std::move(v)));
      return;
    }
    const Position p = interior[idx];
    const auto x0 = solve_coboundary(sys.rhs(p.first, p.second));
    if (!x0) return;
    const auto& z = kernels[p];
    if (z.size() >= 20) {
      out.complete = false;
      return;
    }
    for (Mask pick = 0; pick < bit(static_cast<int>(z.size())); ++pick) {
      Cochain x = *x0;
      for (int t : elements(pick)) x = x + z[t];
      sys.entries.insert_or_assign(p, x);
      walk(idx + 1);
      if (!out.complete) return;
    }
    sys.entries.erase(p);
  };
  walk(0);
  out.class_count = classes.size();
  out.contains_zero = classes.count(std::vector<Scalar>(last_basis.size())) > 0;
  return out;
}

}  // namespace

// ---------------------------------------------------------- defining system

const Cochain& DefiningSystem::at(int k, int l) const {
  auto it = entries.find({k, l});
  if (it == entries.end())
    throw StateError("defining system has no entry (" + std::to_string(k) + "," + std::to_string(l) + ")");
  return it->second;
}

Cochain DefiningSystem::rhs(int k, int l) const {
  Cochain sum = zero_like(at(k, k + 1));
  for (int r = k + 1; r < l; ++r) sum = sum + multiply(at(k, r).bar(), at(r, l));
  return sum;
}

Cochain DefiningSystem::representative() const { return rhs(1, order + 1); }

std::optional<Position> DefiningSystem::first_violation() const {
  if (order < 2) throw InputError("a defining system needs order >= 2");
  for (auto [k, l] : positions(order)) {
    const Cochain d = differential(at(k, l));
    if (l - k == 1 ? !d.is_zero() : !(d == rhs(k, l))) return Position{k, l};
  }
  return std::nullopt;
}

std::optional<std::map<Position, int>> find_sign_fix(const DefiningSystem& system) {
  const auto order = positions(system.order);
  DefiningSystem work = system;
  std::map<Position, int> signs;
  // Each equation only involves entries of shorter span, so it is checked
  // as soon as its own entry's sign is chosen.
  std::function<bool(std::size_t)> walk = [&](std::size_t idx) {
    if (idx == order.size()) return true;
    const auto [k, l] = order[idx];
    for (int s : {1, -1}) {
      const Cochain entry = s == 1 ? system.at(k, l) : -system.at(k, l);
      work.entries.insert_or_assign(Position{k, l}, entry);
      const Cochain d = differential(entry);
      const bool ok = l - k == 1 ? d.is_zero() : d == work.rhs(k, l);
      if (!ok) continue;
      signs[{k, l}] = s;
      if (walk(idx + 1)) return true;
    }
    return false;
  };
  if (!walk(0)) return std::nullopt;
  return signs;
}

DefiningSystem apply_signs(const DefiningSystem& system, const std::map<Position, int>& signs) {
  DefiningSystem out = system;
  for (auto& [p, c] : out.entries) {
    auto it = signs.find(p);
    if (it != signs.end() && it->second < 0) c = -c;
  }
  return out;
}

// ------------------------------------------------------------------ massey

MasseyVerdict triple_massey(const Cochain& a1, const Cochain& a2, const Cochain& a3) {
  const std::vector<Cochain> inputs{a1, a2, a3};
  check_inputs(inputs);
  const ComplexPtr& k = a1.complex();
  const Coefficients& field = a1.field();
  MasseyVerdict v;
  v.order = 3;
  v.resolution = "coset";
  const UniquenessCertificate cert = interior_components(inputs);
  if (all_acyclic(cert)) v.certificate = cert;

  const auto x = solve_coboundary(multiply(a1.bar(), a2));
  const auto y = solve_coboundary(multiply(a2.bar(), a3));
  if (!x || !y) {
    v.undefined_stage = !x ? Position{1, 3} : Position{2, 4};
    return v;
  }
  DefiningSystem sys;
  sys.order = 3;
  sys.entries.emplace(Position{1, 2}, a1);
  sys.entries.emplace(Position{2, 3}, a2);
  sys.entries.emplace(Position{3, 4}, a3);
  sys.entries.emplace(Position{1, 3}, *x);
  sys.entries.emplace(Position{2, 4}, *y);
  const Cochain rep = sys.representative();
  if (!is_cocycle(rep)) throw ConsistencyError("triple product representative is not a cocycle");
  v.defined = true;
  v.system = sys;
  v.representative = rep;

  // Changing x by a cocycle z moves the class by [z̄ a3]; changing y by w
  // moves it by [ā1 w].
  std::vector<Cochain> moves;
  for (const auto& z : cocycle_basis(k, field, shape(inputs, 1, 3))) moves.push_back(multiply(z.bar(), a3));
  for (const auto& w : cocycle_basis(k, field, shape(inputs, 2, 4))) moves.push_back(multiply(a1.bar(), w));

  const Shape last = shape(inputs, 1, 4, 1);
  if (!last.valid) {
    v.contains_zero = true;
    return v;
  }
  const auto basis = component_basis(*k, last.j, last.u);
  std::vector<std::vector<Scalar>> vectors = coboundary_span(*k, field, last);
  const std::size_t fixed = vectors.size();
  for (const auto& m : moves) vectors.push_back(m.is_zero() ? std::vector<Scalar>(basis.size()) : to_vector(m, basis));
  for (std::size_t idx : independent_extension(field, vectors, fixed, basis.size()))
    v.indeterminacy.push_back(moves[idx - fixed]);
  if (rep.is_zero()) {
    v.contains_zero = true;
  } else if (vectors.empty()) {
    v.contains_zero = false;
  } else {
    Matrix span(basis.size(), vectors.size());
    for (std::size_t c = 0; c < vectors.size(); ++c)
      for (std::size_t r = 0; r < basis.size(); ++r) span(r, c) = vectors[c][r];
    v.contains_zero = solve(field, span, to_vector(rep, basis)).has_value();
  }
  return v;
}

MasseyVerdict higher_massey(const std::vector<Cochain>& classes, const MasseyOptions& options) {
  const int n = static_cast<int>(classes.size());
  if (n < 2) throw InputError("a Massey product needs at least 2 classes");
  if (n == 3) return triple_massey(classes[0], classes[1], classes[2]);
  check_inputs(classes);
  const ComplexPtr& k = classes[0].complex();
  const Coefficients& field = classes[0].field();
  MasseyVerdict v;
  v.order = n;
  const UniquenessCertificate cert = interior_components(classes);
  const bool unique = all_acyclic(cert);
  if (unique) v.certificate = cert;

  Attempt attempt = fill(classes, [](const Cochain& x0, Position) { return x0; });
  const std::optional<Position> first_stuck = attempt.stuck;
  std::map<Position, std::vector<Cochain>> kernels;
  for (int r = 0; !attempt.system && !unique && r < options.random_retries; ++r) {
    std::mt19937_64 rng(options.seed + static_cast<std::uint64_t>(r));
    attempt = fill(classes, [&](const Cochain& x0, Position p) {
      auto it = kernels.find(p);
      if (it == kernels.end())
        it = kernels.emplace(p, cocycle_basis(k, field, shape(classes, p.first, p.second))).first;
      Cochain x = x0;
      for (const auto& z : it->second) x = x + z.scaled(static_cast<long>(rng() % 5) - 2);
      return x;
    });
  }

  auto settle_exhaustively = [&] {
    Exhaustive ex;
    try {
      ex = exhaustive_f2(classes, options.exhaustive_bound);
    } catch (const InputError&) {
      ex.complete = false;  // coefficients with even denominators
    }
    if (!ex.complete) return false;
    if (field == Coefficients::prime(2)) {
      v.defined = ex.any_defined;
      if (ex.any_defined) v.contains_zero = ex.contains_zero;
      v.resolution = "exhaustive-f2";
      return true;
    }
    if (ex.any_defined) {
      v.f2_contains_zero = ex.contains_zero;
      v.f2_class_count = ex.class_count;
    }
    return false;
  };

  if (!attempt.system) {
    v.undefined_stage = first_stuck;
    if (unique) {
      v.resolution = "certificate";
    } else if (!settle_exhaustively()) {
      v.resolution = "unresolved";
      v.partial = true;
    }
    return v;
  }

  const DefiningSystem& sys = *attempt.system;
  if (auto bad = sys.first_violation())
    throw ConsistencyError("constructed defining system fails at (" + std::to_string(bad->first) + "," +
                           std::to_string(bad->second) + ")");
  const Cochain rep = sys.representative();
  if (!is_cocycle(rep)) throw ConsistencyError("Massey representative is not a cocycle");
  v.defined = true;
  v.system = sys;
  v.representative = rep;
  if (is_coboundary(rep)) {
    v.contains_zero = true;
    v.resolution = "coboundary";
  } else if (unique || n == 2) {
    v.contains_zero = false;
    v.resolution = "certificate";
    if (!v.certificate) v.certificate = cert;
  } else if (!settle_exhaustively()) {
    v.resolution = "unresolved";
    v.partial = true;
  }
  return v;
}

std::vector<Cochain> canonical_P_classes(int n, const Coefficients& field) {
  const auto k = std::make_shared<const SimplicialComplex>(pn_nerve(n));
  std::vector<Cochain> out;
  for (int i = 0; i < n; ++i) {
    if (k->is_face(bit(i) | bit(n + i)))
      throw ConsistencyError("{" + std::to_string(i + 1) + "," + std::to_string(n + i + 1) + "} is a face");
    Cochain c = Cochain::monomial(k, field, bit(n + i), bit(i));
    if (c.is_zero() || !is_cocycle(c)) throw ConsistencyError("canonical class is not a nonzero cocycle");
    out.push_back(std::move(c));
  }
  return out;
}

bool decomposability_check(const MasseyVerdict& verdict, const Cochain& f1, const Cochain& f2) {
  if (!verdict.representative) throw InputError("verdict has no representative");
  const Cochain& rep = *verdict.representative;
  const Cochain prod = multiply(f1, f2);
  if (prod.is_zero()) return is_coboundary(rep);
  if (rep.is_zero()) return is_coboundary(prod);
  if (prod.degree() != rep.degree() || prod.multidegree() != rep.multidegree() || prod.u_count() != rep.u_count())
    throw InputError("product and Massey class have different bidegrees");
  return is_coboundary(rep - prod) || is_coboundary(rep + prod);
}

// ------------------------------------------------------------ obstructions

namespace {

constexpr int kPairs = 15;

int pair_index(int a, int b) {
  if (a > b) std::swap(a, b);
  // Pairs of {0..5} in lex order.
  static constexpr std::array<int, 6> start{0, 5, 9, 12, 14, 15};
  return start[a] + (b - a - 1);
}

// table[code] = least code in its orbit under S_6.
const std::vector<std::uint16_t>& six_vertex_table() {
  static const std::vector<std::uint16_t> table = [] {
    std::vector<std::array<int, kPairs>> maps;
    std::array<int, 6> perm{0, 1, 2, 3, 4, 5};
    do {
      std::array<int, kPairs> m{};
      for (int a = 0; a < 6; ++a)
        for (int b = a + 1; b < 6; ++b) m[pair_index(a, b)] = pair_index(perm[a], perm[b]);
      maps.push_back(m);
    } while (std::next_permutation(perm.begin(), perm.end()));
    std::vector<std::uint16_t> t(1 << kPairs, 0xFFFF);
    for (int code = 0; code < (1 << kPairs); ++code) {
      if (t[code] != 0xFFFF) continue;
      for (const auto& m : maps) {
        int image = 0;
        for (int p = 0; p < kPairs; ++p)
          if (code >> p & 1) image |= 1 << m[p];
        t[image] = static_cast<std::uint16_t>(code);
      }
    }
    return t;
  }();
  return table;
}

std::uint16_t raw_code(const std::vector<Mask>& adj, const std::array<int, 6>& vs) {
  int code = 0;
  for (int a = 0; a < 6; ++a)
    for (int b = a + 1; b < 6; ++b)
      if (contains(adj[vs[a]], vs[b])) code |= 1 << pair_index(a, b);
  return static_cast<std::uint16_t>(code);
}

// Searches one 6-vertex complex; pairs are in its own labels.
std::optional<std::vector<std::pair<int, int>>> nontrivial_triple_on(const ComplexPtr& l,
                                                                     const Coefficients& field) {
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < 6; ++a)
    for (int b = a + 1; b < 6; ++b)
      if (l->is_face(bit(a)) && l->is_face(bit(b)) && !l->is_face(bit(a) | bit(b))) pairs.emplace_back(a, b);
  auto cls = [&](std::pair<int, int> p) { return Cochain::monomial(l, field, bit(p.second), bit(p.first)); };
  auto disjoint = [](std::pair<int, int> p, std::pair<int, int> q) {
    return p.first != q.first && p.first != q.second && p.second != q.first && p.second != q.second;
  };
  for (auto p1 : pairs)
    for (auto p2 : pairs) {
      if (!disjoint(p1, p2)) continue;
      // [a1][a2] must vanish before anything else is tried.
      if (!is_coboundary(multiply(cls(p1).bar(), cls(p2)))) continue;
      for (auto p3 : pairs) {
        if (!disjoint(p1, p3) || !disjoint(p2, p3)) continue;
        const MasseyVerdict v = triple_massey(cls(p1), cls(p2), cls(p3));
        if (v.defined && v.contains_zero == false) return std::vector<std::pair<int, int>>{p1, p2, p3};
      }
    }
  return std::nullopt;
}

std::vector<std::array<int, 6>> six_subsets(int m) {
  std::vector<std::array<int, 6>> out;
  if (m < 6) return out;
  std::array<int, 6> c{0, 1, 2, 3, 4, 5};
  while (true) {
    out.push_back(c);
    int t = 5;
    while (t >= 0 && c[t] == m - 6 + t) --t;
    if (t < 0) break;
    ++c[t];
    for (int s = t + 1; s < 6; ++s) c[s] = c[s - 1] + 1;
  }
  return out;
}

}  // namespace

std::uint16_t six_vertex_code(const Graph& g) {
  if (g.vertex_count() != 6) throw InputError("six_vertex_code needs a graph on 6 vertices");
  std::vector<Mask> adj;
  for (int v = 0; v < 6; ++v) adj.push_back(g.neighbors(v));
  return six_vertex_table()[raw_code(adj, {0, 1, 2, 3, 4, 5})];
}

Graph graph_from_six_vertex_code(std::uint16_t code) {
  std::vector<std::pair<int, int>> edges;
  for (int a = 0; a < 6; ++a)
    for (int b = a + 1; b < 6; ++b)
      if (code >> pair_index(a, b) & 1) edges.emplace_back(a, b);
  return Graph(6, edges);
}

std::optional<TripleWitness> find_nontrivial_triple(const SimplicialComplex& k, const Coefficients& field,
                                                    int threads) {
  const auto subsets = six_subsets(k.vertex_count());
  std::mutex memo_mutex;
  std::map<std::vector<Mask>, std::optional<std::vector<std::pair<int, int>>>> memo;  // by canonical facets
  std::atomic<std::size_t> best{subsets.size()};
  std::vector<std::optional<TripleWitness>> found(subsets.size());
  parallel_for(
      subsets.size(), thread_count(threads),
      [&](int, std::size_t idx) {
        if (idx > best.load()) return;
        Mask j = 0;
        for (int v : subsets[idx]) j |= bit(v);
        const InducedSubcomplex sub = induced_subcomplex(k, j);
        const CanonicalForm form = canonical_form(sub.complex);
        std::optional<std::vector<std::pair<int, int>>> hit;
        {
          std::unique_lock<std::mutex> lock(memo_mutex);
          auto it = memo.find(form.facets);
          if (it != memo.end()) {
            hit = it->second;
          } else {
            lock.unlock();
            const auto canon = std::make_shared<const SimplicialComplex>(form.complex());
            hit = nontrivial_triple_on(canon, field);
            lock.lock();
            memo.emplace(form.facets, hit);
          }
        }
        if (!hit) return;
        // Canonical label -> induced label -> vertex of k.
        std::vector<int> back(6);
        for (int t = 0; t < 6; ++t) back[form.relabeling[t]] = sub.vertex_map[t];
        TripleWitness w;
        for (auto [a, b] : *hit) w.pairs.emplace_back(std::min(back[a], back[b]), std::max(back[a], back[b]));
        found[idx] = w;
        std::size_t cur = best.load();
        while (idx < cur && !best.compare_exchange_weak(cur, idx)) {
        }
      },
      16);
  const std::size_t b = best.load();
  if (b == subsets.size()) return std::nullopt;
  return found[b];
}

bool ObstructionCatalog::contains(std::uint16_t code) const {
  return std::binary_search(codes.begin(), codes.end(), code);
}

std::vector<Graph> ObstructionCatalog::graphs() const {
  std::vector<Graph> out;
  for (auto c : codes) out.push_back(graph_from_six_vertex_code(c));
  return out;
}

ObstructionCatalog derive_obstruction_catalog(int threads) {
  const CensusResult census = enumerate_graphs(6, threads);
  std::vector<char> positive(census.entries.size(), 0);
  parallel_for(
      census.entries.size(), thread_count(threads),
      [&](int, std::size_t idx) {
        const auto l = std::make_shared<const SimplicialComplex>(census.entries[idx].complex);
        positive[idx] = nontrivial_triple_on(l, Coefficients::rationals()).has_value();
      },
      4);
  ObstructionCatalog out;
  for (std::size_t i = 0; i < positive.size(); ++i)
    if (positive[i]) out.codes.push_back(six_vertex_code(one_skeleton(census.entries[i].complex)));
  std::sort(out.codes.begin(), out.codes.end());
  return out;
}

ObstructionWitness detect_obstruction(const SimplicialComplex& k, const ObstructionCatalog& catalog,
                                      ObstructionReading reading) {
  if (catalog.empty()) throw StateError("obstruction catalog is empty; derive or load it first");
  const auto& table = six_vertex_table();
  const std::vector<Mask> adj = k.adjacency();
  const int m = k.vertex_count();
  std::array<int, 6> vs{};
  ObstructionWitness out;
  // Lex-ordered 6-subsets of present vertices.
  std::vector<int> present;
  for (int v = 0; v < m; ++v)
    if (k.is_face(bit(v))) present.push_back(v);
  const int p = static_cast<int>(present.size());
  std::function<bool(int, int)> walk = [&](int depth, int from) {
    if (depth == 6) {
      if (!catalog.contains(table[raw_code(adj, vs)])) return false;
      if (reading == ObstructionReading::strict)
        for (int a = 0; a < 6; ++a)
          for (int b = a + 1; b < 6; ++b)
            for (int c = b + 1; c < 6; ++c)
              if (k.is_face(bit(vs[a]) | bit(vs[b]) | bit(vs[c]))) return false;
      return true;
    }
    for (int i = from; i <= p - (6 - depth); ++i) {
      vs[depth] = present[i];
      if (walk(depth + 1, i + 1)) return true;
    }
    return false;
  };
  if (walk(0, 0)) {
    out.found = true;
    for (int v : vs) out.vertices |= bit(v);
  }
  return out;
}

bool graph_associahedron_massey_predicate(const Graph& g) {
  Mask seen = 0;
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (contains(seen, v)) continue;
    Mask comp = bit(v), frontier = bit(v);
    while (frontier) {
      Mask next = 0;
      for (int x : elements(frontier)) next |= g.neighbors(x);
      frontier = next & ~comp;
      comp |= next;
    }
    seen |= comp;
    const int size = popcount(comp);
    if (size < 4) continue;
    if (size > 4) return true;
    for (int x : elements(comp))
      if ((g.neighbors(x) & comp) != (comp & ~bit(x))) return true;
  }
  return false;
}

// ---------------------------------------------------------- permutohedron

std::optional<PermutohedronExample> solve_pe3_labeling() {
  const Nerve nerve = nerve_of_nestohedron(graphical_building_set(complete_graph(4)));
  const SimplicialComplex& k = nerve.complex;
  const int m = k.vertex_count();
  const std::vector<Mask> adj = k.adjacency();
  const Coefficients q = Coefficients::rationals();

  // Neighbors of v as a cycle (its link is a polygon).
  auto ring = [&](int v) {
    std::vector<int> out{lowest(adj[v])};
    while (static_cast<int>(out.size()) < popcount(adj[v])) {
      const Mask next = adj[out.back()] & adj[v] & ~from_elements(out);
      out.push_back(lowest(next));
    }
    return out;
  };
  auto orientations = [](const std::vector<int>& cyc) {
    std::vector<std::vector<int>> out;
    const int d = static_cast<int>(cyc.size());
    for (int dir : {1, -1})
      for (int s = 0; s < d; ++s) {
        std::vector<int> r;
        for (int t = 0; t < d; ++t) r.push_back(cyc[((s + dir * t) % d + d) % d]);
        out.push_back(r);
      }
    return out;
  };

  for (int h = 0; h < m; ++h) {
    if (popcount(adj[h]) != 6) continue;
    int opposite = -1;
    for (int o = 0; o < m; ++o)
      if (o != h && !(adj[o] & (adj[h] | bit(h)))) opposite = o;
    if (opposite < 0 || popcount(adj[opposite]) != 6) continue;
    for (const auto& bottom : orientations(ring(h)))
      for (const auto& top : orientations(ring(opposite))) {
        std::vector<int> perm(m, -1);
        perm[h] = 0;
        perm[opposite] = 13;
        for (int t = 0; t < 6; ++t) {
          perm[bottom[t]] = 1 + t;
          perm[top[t]] = 7 + t;
        }
        const auto lab = std::make_shared<const SimplicialComplex>(relabel(k, perm));
        auto nonface = [&](int a, int b) { return !lab->is_face(bit(a - 1) | bit(b - 1)); };
        if (!nonface(1, 14) || !nonface(6, 10) || !nonface(8, 4) || !nonface(2, 12)) continue;
        auto c = [&](const char* text) { return parse_cochain(text, lab, q); };
        DefiningSystem sys;
        sys.order = 4;
        sys.entries.emplace(Position{1, 2}, c("v1 u14"));
        sys.entries.emplace(Position{2, 3}, c("v6 u10"));
        sys.entries.emplace(Position{3, 4}, c("v8 u4"));
        sys.entries.emplace(Position{4, 5}, c("v2 u12"));
        sys.entries.emplace(Position{1, 3}, c("v6 u1 u14 u10"));
        sys.entries.emplace(Position{2, 4}, c("v6 u10 u8 u4"));
        sys.entries.emplace(Position{3, 5}, c("v2 u8 u4 u12"));
        sys.entries.emplace(Position{1, 4}, c("v6 u1 u8 u4 u10 u14"));
        sys.entries.emplace(Position{2, 5}, Cochain(lab, q));
        bool nonzero = true;
        for (auto p : positions(4))
          if (p != Position{2, 5} && sys.at(p.first, p.second).is_zero()) nonzero = false;
        if (!nonzero) continue;
        const auto signs = find_sign_fix(sys);
        if (!signs) continue;
        PermutohedronExample ex;
        ex.complex = lab;
        ex.label_to_subset.resize(m);
        for (int v = 0; v < m; ++v) ex.label_to_subset[perm[v]] = nerve.labels[v];
        ex.system = apply_signs(sys, *signs);
        for (int t = 1; t <= 4; ++t) ex.classes.push_back(ex.system.at(t, t + 1));
        return ex;
      }
  }
  return std::nullopt;
}

}  // namespace macx

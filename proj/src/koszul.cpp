#include "macx/koszul.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <unordered_map>

#include "macx/canonical.hpp"
#include "macx/errors.hpp"
#include "macx/parallel.hpp"

namespace macx {

namespace {

// Number of pairs (a in A, b in B) with a > b: the parity of merging the
// ascending lists A and B.
int shuffle_inversions(Mask a, Mask b) {
  int count = 0;
  for (int x : elements(b)) count += popcount(a & ~low_bits(x + 1));
  return count;
}

bool vanishes(const SimplicialComplex& k, Mask u, Mask v) { return (u & v) || !k.is_face(v); }

void require_field(const Coefficients& field) {
  if (!field.is_field()) throw InputError("Koszul computations need field coefficients");
}

}  // namespace

// ----------------------------------------------------------------- cochain

Cochain::Cochain(std::shared_ptr<const SimplicialComplex> k, Coefficients field)
    : k_(std::move(k)), field_(std::move(field)) {
  if (!k_) throw InputError("cochain needs an ambient complex");
  require_field(field_);
}

Cochain Cochain::monomial(std::shared_ptr<const SimplicialComplex> k, Coefficients field, Mask u, Mask v,
                          const Scalar& coefficient) {
  Cochain c(std::move(k), std::move(field));
  if (!is_subset(u | v, low_bits(c.k_->vertex_count()))) throw InputError("monomial index out of range");
  if (!vanishes(*c.k_, u, v)) c.add_term({u, v}, coefficient);
  return c;
}

int Cochain::degree() const {
  if (is_zero()) throw StateError("zero cochain has no degree");
  return terms_.begin()->first.degree();
}

int Cochain::u_count() const {
  if (is_zero()) throw StateError("zero cochain has no bidegree");
  return popcount(terms_.begin()->first.u);
}

Mask Cochain::multidegree() const {
  if (is_zero()) throw StateError("zero cochain has no multidegree");
  return terms_.begin()->first.multidegree();
}

void Cochain::add_term(const Monomial& m, const Scalar& c) {
  const Scalar value = field_.reduce(c);
  if (value == 0) return;
  if (!terms_.empty()) {
    const Monomial& first = terms_.begin()->first;
    if (first.multidegree() != m.multidegree() || popcount(first.u) != popcount(m.u))
      throw InputError("cochain terms must share bidegree and multidegree");
  }
  auto [it, inserted] = terms_.try_emplace(m, value);
  if (!inserted) {
    it->second = field_.reduce(it->second + value);
    if (it->second == 0) terms_.erase(it);
  }
}

void Cochain::check_compatible(const Cochain& o) const {
  if (!(field_ == o.field_)) throw InputError("cochains over different fields");
  if (k_ != o.k_ && !(*k_ == *o.k_)) throw InputError("cochains over different complexes");
}

Cochain Cochain::operator+(const Cochain& o) const {
  check_compatible(o);
  Cochain out = *this;
  for (const auto& [m, c] : o.terms_) out.add_term(m, c);
  return out;
}

Cochain Cochain::operator-(const Cochain& o) const { return *this + (-o); }

Cochain Cochain::operator-() const { return scaled(-1); }

Cochain Cochain::scaled(const Scalar& c) const {
  Cochain out(k_, field_);
  for (const auto& [m, x] : terms_) out.add_term(m, x * c);
  return out;
}

Cochain Cochain::bar() const {
  if (is_zero()) return *this;
  return degree() % 2 ? -*this : *this;
}

std::string Cochain::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Scalar shown = c;
    // Over F_p print the representative nearest zero.
    if (field_.kind() == Coefficients::Kind::Prime && c > Scalar(field_.characteristic()) / 2)
      shown = c - field_.characteristic();
    if (!first) out << ' ';
    out << (shown < 0 ? "- " : "+ ");
    first = false;
    const Scalar mag = abs(shown);
    if (mag != 1) out << mag.get_str() << ' ';
    std::string sep;
    for (int x : elements(m.v)) {
      out << sep << 'v' << x + 1;
      sep = " ";
    }
    for (int x : elements(m.u)) {
      out << sep << 'u' << x + 1;
      sep = " ";
    }
  }
  return out.str();
}

Cochain parse_cochain(const std::string& text, std::shared_ptr<const SimplicialComplex> k, Coefficients field) {
  Cochain out(k, field);
  std::istringstream in(text);
  std::vector<std::string> tokens;
  for (std::string t; in >> t;) {
    // Allow signs glued to the next token: "-v1".
    while (t.size() > 1 && (t[0] == '+' || t[0] == '-')) {
      tokens.push_back(t.substr(0, 1));
      t = t.substr(1);
    }
    tokens.push_back(t);
  }
  if (tokens.size() == 1 && tokens[0] == "0") return out;
  const int m = k->vertex_count();
  std::size_t pos = 0;
  bool any = false;
  while (pos < tokens.size()) {
    Scalar coefficient = 1;
    if (tokens[pos] == "+" || tokens[pos] == "-") {
      if (tokens[pos] == "-") coefficient = -1;
      ++pos;
    } else if (any) {
      throw InputError("expected '+' or '-' before term in cochain text");
    }
    bool had_coefficient = false;
    if (pos < tokens.size() && !tokens[pos].empty() &&
        (std::isdigit(static_cast<unsigned char>(tokens[pos][0])))) {
      had_coefficient = true;
      try {
        Scalar c(tokens[pos]);
        c.canonicalize();
        coefficient *= c;
      } catch (const std::invalid_argument&) {
        throw InputError("bad coefficient '" + tokens[pos] + "'");
      }
      ++pos;
    }
    std::vector<int> us;
    Mask u = 0, v = 0;
    bool zero = false;
    while (pos < tokens.size() && tokens[pos] != "+" && tokens[pos] != "-") {
      const std::string& g = tokens[pos++];
      if (g.size() < 2 || (g[0] != 'u' && g[0] != 'v'))
        throw InputError("bad generator '" + g + "' in cochain text");
      int index = 0;
      try {
        std::size_t used = 0;
        index = std::stoi(g.substr(1), &used);
        if (used != g.size() - 1) throw std::invalid_argument(g);
      } catch (const std::exception&) {
        throw InputError("bad generator '" + g + "' in cochain text");
      }
      if (index < 1 || index > m) throw InputError("generator '" + g + "' out of range");
      const Mask b = bit(index - 1);
      if (g[0] == 'u') {
        if (u & b) zero = true;
        u |= b;
        us.push_back(index - 1);
      } else {
        if (v & b) zero = true;
        v |= b;
      }
    }
    if (us.empty() && v == 0 && !had_coefficient) throw InputError("empty term in cochain text");
    any = true;
    if (zero || vanishes(*k, u, v)) continue;
    int inversions = 0;
    for (std::size_t a = 0; a < us.size(); ++a)
      for (std::size_t b = a + 1; b < us.size(); ++b)
        if (us[a] > us[b]) ++inversions;
    out.add_term({u, v}, inversions % 2 ? Scalar(-coefficient) : coefficient);
  }
  return out;
}

Cochain relabel(const Cochain& c, std::shared_ptr<const SimplicialComplex> target, const std::vector<int>& perm) {
  if (static_cast<int>(perm.size()) != c.complex()->vertex_count() ||
      target->vertex_count() != c.complex()->vertex_count())
    throw InputError("relabeling must be a permutation of the vertices");
  Cochain out(target, c.field());
  for (const auto& [m, value] : c.terms()) {
    std::vector<int> image;
    for (int x : elements(m.u)) image.push_back(perm[x]);
    int inversions = 0;
    for (std::size_t a = 0; a < image.size(); ++a)
      for (std::size_t b = a + 1; b < image.size(); ++b)
        if (image[a] > image[b]) ++inversions;
    Mask v = 0;
    for (int x : elements(m.v)) v |= bit(perm[x]);
    if (vanishes(*target, from_elements(image), v)) throw InputError("relabeled term vanishes in the target");
    out.add_term({from_elements(image), v}, inversions % 2 ? Scalar(-value) : value);
  }
  return out;
}

Cochain change_field(const Cochain& c, const Coefficients& field) {
  Cochain out(c.complex(), field);
  for (const auto& [m, value] : c.terms()) out.add_term(m, value);
  return out;
}

Cochain multiply(const Cochain& a, const Cochain& b) {
  if (!(a.field() == b.field())) throw InputError("cochains over different fields");
  if (a.complex() != b.complex() && !(*a.complex() == *b.complex()))
    throw InputError("cochains over different complexes");
  const SimplicialComplex& k = *a.complex();
  Cochain out(a.complex(), a.field());
  for (const auto& [x, cx] : a.terms())
    for (const auto& [y, cy] : b.terms()) {
      if ((x.u & y.u) || (x.v & y.v)) continue;
      const Mask u = x.u | y.u, v = x.v | y.v;
      if (vanishes(k, u, v)) continue;
      const Scalar c = cx * cy;
      out.add_term({u, v}, shuffle_inversions(x.u, y.u) % 2 ? Scalar(-c) : c);
    }
  return out;
}

Cochain differential(const Cochain& a) {
  const SimplicialComplex& k = *a.complex();
  Cochain out(a.complex(), a.field());
  for (const auto& [x, c] : a.terms()) {
    int t = 0;
    for (int j : elements(x.u)) {
      const Mask v = x.v | bit(j);
      if (k.is_face(v)) out.add_term({x.u & ~bit(j), v}, t % 2 ? Scalar(-c) : c);
      ++t;
    }
  }
  return out;
}

// -------------------------------------------------------------- components

std::vector<Monomial> component_basis(const SimplicialComplex& k, Mask j, int i) {
  std::vector<Monomial> out;
  if (i < 0 || i > popcount(j)) return out;
  const std::vector<int> elems = elements(j);
  const int n = static_cast<int>(elems.size());
  if (n > 30) throw ResourceError("multidegree too large");
  // Subsets of positions of size i.
  std::vector<int> pick(i);
  for (int t = 0; t < i; ++t) pick[t] = t;
  while (true) {
    Mask u = 0;
    for (int t : pick) u |= bit(elems[t]);
    if (k.is_face(j & ~u)) out.push_back({u, j & ~u});
    int t = i - 1;
    while (t >= 0 && pick[t] == n - i + t) --t;
    if (t < 0) break;
    ++pick[t];
    for (int s = t + 1; s < i; ++s) pick[s] = pick[s - 1] + 1;
  }
  std::sort(out.begin(), out.end(), MonomialLess{});
  return out;
}

IntMatrix koszul_differential_matrix(const SimplicialComplex& k, Mask j, int i) {
  const auto source = component_basis(k, j, i);
  const auto target = component_basis(k, j, i - 1);
  std::unordered_map<Mask, std::size_t> row_of;
  for (std::size_t r = 0; r < target.size(); ++r) row_of[target[r].u] = r;
  IntMatrix d(target.size(), source.size());
  for (std::size_t c = 0; c < source.size(); ++c) {
    int t = 0;
    for (int x : elements(source[c].u)) {
      auto it = row_of.find(source[c].u & ~bit(x));
      if (it != row_of.end()) d(it->second, c) = (t % 2) ? -1 : 1;
      ++t;
    }
  }
  return d;
}

std::vector<Scalar> to_vector(const Cochain& c, const std::vector<Monomial>& basis) {
  std::vector<Scalar> x(basis.size());
  for (const auto& [m, value] : c.terms()) {
    auto it = std::lower_bound(basis.begin(), basis.end(), m, MonomialLess{});
    if (it == basis.end() || !(*it == m)) throw InputError("cochain has a term outside the component");
    x[it - basis.begin()] = value;
  }
  return x;
}

Cochain from_vector(const std::vector<Scalar>& x, const std::vector<Monomial>& basis,
                    std::shared_ptr<const SimplicialComplex> k, const Coefficients& field) {
  Cochain out(std::move(k), field);
  for (std::size_t t = 0; t < basis.size(); ++t)
    if (x[t] != 0) out.add_term(basis[t], x[t]);
  return out;
}

ComponentCohomology component_cohomology(std::shared_ptr<const SimplicialComplex> k, int i, Mask j,
                                         const Coefficients& field, bool with_representatives) {
  require_field(field);
  if (!is_subset(j, low_bits(k->vertex_count()))) throw InputError("multidegree out of range");
  ComponentCohomology out;
  out.multidegree = j;
  out.i = i;
  const auto basis = component_basis(*k, j, i);
  out.cochain_dim = basis.size();
  if (basis.empty()) return out;
  const IntMatrix down = koszul_differential_matrix(*k, j, i);
  const IntMatrix up = koszul_differential_matrix(*k, j, i + 1);
  const std::size_t rank_down = down.rows() ? rank(field, down) : 0;
  out.cocycle_dim = basis.size() - rank_down;
  out.coboundary_dim = up.cols() ? rank(field, up) : 0;
  out.rank = out.cocycle_dim - out.coboundary_dim;
  if (!with_representatives || out.rank == 0) return out;

  std::vector<std::vector<Scalar>> vectors;
  const Matrix up_f = up.to_field(field);
  for (std::size_t c = 0; c < up_f.cols(); ++c) vectors.push_back(up_f.column(c));
  const std::size_t fixed = vectors.size();
  std::vector<std::vector<Scalar>> kernel;
  if (down.rows()) {
    kernel = kernel_basis(field, down.to_field(field));
  } else {
    for (std::size_t t = 0; t < basis.size(); ++t) {
      std::vector<Scalar> e(basis.size());
      e[t] = 1;
      kernel.push_back(e);
    }
  }
  for (auto& x : kernel) vectors.push_back(x);
  for (std::size_t idx : independent_extension(field, vectors, fixed, basis.size()))
    out.representatives.push_back(from_vector(vectors[idx], basis, k, field));
  if (out.representatives.size() != out.rank) throw ConsistencyError("representative count differs from rank");
  return out;
}

std::optional<Cochain> solve_coboundary(const Cochain& c) {
  if (c.is_zero()) return c;
  const Mask j = c.multidegree();
  const int i = c.u_count();
  const auto basis = component_basis(*c.complex(), j, i);
  const auto above = component_basis(*c.complex(), j, i + 1);
  if (above.empty()) return std::nullopt;
  const Matrix d = koszul_differential_matrix(*c.complex(), j, i + 1).to_field(c.field());
  auto x = solve(c.field(), d, to_vector(c, basis));
  if (!x) return std::nullopt;
  return from_vector(*x, above, c.complex(), c.field());
}

bool is_cocycle(const Cochain& c) { return differential(c).is_zero(); }

bool is_coboundary(const Cochain& c) { return solve_coboundary(c).has_value(); }

std::optional<Cochain> monomial_representative(const Cochain& c) {
  if (c.is_zero() || !is_cocycle(c)) return std::nullopt;
  const auto& k = c.complex();
  const Mask j = c.multidegree();
  const int i = c.u_count();
  const auto basis = component_basis(*k, j, i);
  const auto above = component_basis(*k, j, i + 1);
  const Matrix d = above.empty() ? Matrix(basis.size(), 0)
                                 : koszul_differential_matrix(*k, j, i + 1).to_field(c.field());
  const auto target = to_vector(c, basis);
  for (const auto& m : basis) {
    const Cochain mono = Cochain::monomial(k, c.field(), m.u, m.v);
    if (!is_cocycle(mono)) continue;
    std::vector<std::vector<Scalar>> extra{to_vector(mono, basis)};
    auto x = solve(c.field(), d.with_columns(extra), target);
    if (!x || x->back() == 0) continue;
    return mono.scaled(x->back());
  }
  return std::nullopt;
}

// ------------------------------------------------------------ Betti tables

std::size_t BettiTable::at(int i, int j) const {
  auto it = bigraded.find({i, j});
  return it == bigraded.end() ? 0 : it->second;
}

std::vector<std::size_t> BettiTable::totals() const {
  std::vector<std::size_t> out(2 * m + 1, 0);
  for (const auto& [key, value] : bigraded) {
    const int p = 2 * key.second - key.first;
    if (p >= 0 && p < static_cast<int>(out.size())) out[p] += value;
  }
  return out;
}

std::string BettiTable::to_tsv() const {
  std::ostringstream out;
  out << "# coefficients=" << coefficients.name() << " m=" << m << (strip_only ? " mode=strip" : " mode=full");
  if (!fingerprint.empty()) out << " fingerprint=" << fingerprint;
  out << '\n';
  int max_i = 0;
  for (const auto& [key, value] : bigraded)
    if (value) max_i = std::max(max_i, key.first);
  out << "i\\2j";
  for (int j = 0; j <= m; ++j) out << '\t' << 2 * j;
  out << '\n';
  for (int i = 0; i <= max_i; ++i) {
    out << i;
    for (int j = 0; j <= m; ++j) {
      out << '\t' << at(i, j);
      auto t = torsion.find({i, j});
      if (t != torsion.end() && !t->second.empty()) {
        out << '[';
        for (std::size_t s = 0; s < t->second.size(); ++s) out << (s ? "," : "") << "Z/" << t->second[s].get_str();
        out << ']';
      }
    }
    out << '\n';
  }
  if (!strip_only) {
    const auto tot = totals();
    out << 'p';
    for (std::size_t p = 0; p < tot.size(); ++p) out << '\t' << p;
    out << "\ntotal";
    for (std::size_t value : tot) out << '\t' << value;
    out << '\n';
  }
  return out.str();
}

namespace {

// Components of the 1-skeleton of K_J, counting only vertices that are faces.
int components_within(const std::vector<Mask>& adjacency, Mask vertices, Mask j) {
  Mask left = j & vertices;
  int count = 0;
  while (left) {
    Mask seen = bit(lowest(left)), frontier = seen;
    while (frontier) {
      Mask next = 0;
      for (int v : elements(frontier)) next |= adjacency[v];
      next &= left & ~seen;
      seen |= next;
      frontier = next;
    }
    left &= ~seen;
    ++count;
  }
  return count;
}

struct PartialTable {
  std::map<std::pair<int, int>, std::size_t> bigraded;
  std::map<std::pair<int, Mask>, std::size_t> multigraded;
  std::map<std::pair<int, int>, std::vector<mpz_class>> torsion;
};

}  // namespace

BettiTable hochster_betti_table(const SimplicialComplex& k, const Coefficients& coeff, const HochsterOptions& options) {
  if (k.is_void()) throw InputError("the void complex has no Stanley-Reisner ring");
  const int m = k.vertex_count();
  if (!options.strip_only && m > options.cap)
    throw ResourceError("m = " + std::to_string(m) + " exceeds the full-table cap of " + std::to_string(options.cap) +
                        "; use strip mode");
  if (options.strip_only && m > 30) throw ResourceError("strip mode supports m <= 30");

  BettiTable table;
  table.coefficients = coeff;
  table.m = m;
  table.strip_only = options.strip_only;
  if (options.fingerprint) table.fingerprint = canonical_form(k).fingerprint();

  const int threads = thread_count(options.threads);
  std::vector<PartialTable> partial(std::max(1, threads));
  const std::size_t subsets = std::size_t{1} << m;

  if (options.strip_only) {
    const auto adjacency = k.adjacency();
    Mask vertices = 0;
    for (int v = 0; v < m; ++v)
      if (k.is_face(bit(v))) vertices |= bit(v);
    parallel_for(subsets, threads, [&](int w, std::size_t idx) {
      const Mask j = static_cast<Mask>(idx);
      if (popcount(j) < 2) return;
      const int cc = components_within(adjacency, vertices, j);
      if (cc >= 2) {
        const int i = popcount(j) - 1;
        partial[w].bigraded[{i, i + 1}] += static_cast<std::size_t>(cc - 1);
        if (options.multigraded) partial[w].multigraded[{i, j}] = static_cast<std::size_t>(cc - 1);
      }
    }, 4096);
    table.bigraded[{0, 0}] = 1;
  } else {
    parallel_for(subsets, threads, [&](int w, std::size_t idx) {
      const Mask j = static_cast<Mask>(idx);
      const int size = popcount(j);
      const HomologySummary h = reduced_cohomology(restrict_to(k, j), coeff);
      for (std::size_t level = 0; level < h.rank.size(); ++level) {
        const int d = static_cast<int>(level) - 1;
        const int i = size - d - 1;
        if (h.rank[level]) {
          partial[w].bigraded[{i, size}] += h.rank[level];
          if (options.multigraded) partial[w].multigraded[{i, j}] = h.rank[level];
        }
        if (level < h.torsion.size() && !h.torsion[level].empty()) {
          auto& t = partial[w].torsion[{i, size}];
          t.insert(t.end(), h.torsion[level].begin(), h.torsion[level].end());
        }
      }
    }, 64);
  }

  for (auto& p : partial) {
    for (const auto& [key, value] : p.bigraded) table.bigraded[key] += value;
    table.multigraded.insert(p.multigraded.begin(), p.multigraded.end());
    for (auto& [key, value] : p.torsion) {
      auto& t = table.torsion[key];
      t.insert(t.end(), value.begin(), value.end());
    }
  }
  for (auto& [key, value] : table.torsion) std::sort(value.begin(), value.end());
  return table;
}

std::size_t pontryagin_generator_lower_bound(const SimplicialComplex& k, const Coefficients& coeff) {
  const FlagReport flag = is_flag(k);
  if (!flag.flag) throw InputError("complex is not flag: minimal non-face " + to_string(*flag.witness));
  HochsterOptions options;
  options.strip_only = true;
  options.fingerprint = false;
  const BettiTable table = hochster_betti_table(k, coeff, options);
  const int n = k.dimension() + 1;
  std::size_t sum = 0;
  for (int i = 1; i <= k.vertex_count() - n; ++i) sum += table.at(i, i + 1);
  return sum;
}

PoincareReport poincare_duality_check(const SimplicialComplex& k, const Coefficients& field,
                                      const HochsterOptions& options) {
  require_field(field);
  HochsterOptions full = options;
  full.strip_only = false;
  const BettiTable table = hochster_betti_table(k, field, full);
  PoincareReport report;
  report.dimension = k.vertex_count() + k.dimension() + 1;
  report.totals = table.totals();
  report.totals.resize(std::max<std::size_t>(report.totals.size(), report.dimension + 1), 0);
  for (int p = 0; p < static_cast<int>(report.totals.size()); ++p) {
    const int q = report.dimension - p;
    const std::size_t mirror = (q >= 0 && q < static_cast<int>(report.totals.size())) ? report.totals[q] : 0;
    if (report.totals[p] != mirror) {
      report.symmetric = false;
      report.first_violation = p;
      break;
    }
  }
  return report;
}

}  // namespace macx

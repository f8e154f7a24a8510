#include "incidence/verifier.hpp"

#include <algorithm>
#include <chrono>
#include <exception>
#include <limits>
#include <set>
#include <thread>

#include "incidence/io.hpp"

namespace incidence {

namespace {

bool is_z2(const FieldDesc& f) { return f.cardinality_class() == CardinalityClass::two; }

BigInt power(std::uint64_t base, std::uint64_t exp) {
  BigInt r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) r *= base;
  return r;
}

std::string describe(const Poset& poset, const FieldDesc& field) {
  return poset_literal(poset) + " over " + field.literal();
}

bool lambda_injective(const Lambda& lambda) {
  return std::visit([](const auto& l) { return is_injective(l); }, lambda);
}

bool lambda_automorphism(const Lambda& lambda) {
  return std::visit([](const auto& l) { return is_automorphism(l).has_value(); }, lambda);
}

bool psi_bijective_on_radical(const LinearMap& psi) {
  const std::size_t n = psi.poset().size(), d = psi.dimension(), m = d - n;
  std::vector<Scalar> block;
  for (std::size_t r = n; r < d; ++r)
    for (std::size_t c = n; c < d; ++c) block.push_back(psi(r, c));
  return matrix_rank(block, m, m) == m;
}

std::vector<std::uint32_t> residues(const LinearMap& phi) {
  std::vector<std::uint32_t> out;
  out.reserve(phi.entries().size());
  for (const auto& s : phi.entries()) out.push_back(s.residue());
  return out;
}

// Splits [0, total) into contiguous ranges, runs f on each (in parallel when
// threads > 1) and returns the per-range results in range order.
template <class R, class F>
std::vector<R> run_ranges(std::uint64_t total, unsigned threads, F f) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  const std::uint64_t parts = std::max<std::uint64_t>(1, std::min<std::uint64_t>(threads, total));
  std::vector<R> results(parts);
  std::vector<std::exception_ptr> errors(parts);
  auto work = [&](std::uint64_t p) {
    const std::uint64_t begin = total * p / parts, end = total * (p + 1) / parts;
    try {
      results[p] = f(begin, end);
    } catch (...) {
      errors[p] = std::current_exception();
    }
  };
  if (parts == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (std::uint64_t p = 0; p < parts; ++p) pool.emplace_back(work, p);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return results;
}

LemmaVerdict verdict(std::string lemma, std::string instance, std::optional<std::string> witness) {
  LemmaVerdict v;
  v.lemma = std::move(lemma);
  v.instance = std::move(instance);
  v.pass = !witness.has_value();
  v.witness = std::move(witness);
  return v;
}

// Elements for the lemmas quantified over all alpha: everything when q^d is
// small, otherwise every diagonal pattern (over a small value set for Q) with
// a seeded radical part, plus the basis.
inline constexpr std::uint64_t kMaxLemmaElements = 20'000;

std::vector<FIElement> lemma_elements(const LinearMap& phi) {
  const auto& poset = phi.poset_ptr();
  const auto& field = phi.field();
  const std::size_t n = poset->size(), d = phi.dimension();
  std::vector<Scalar> values;
  if (field.is_finite())
    values = enumerate_field(field);
  else
    for (int v : {0, 1, -1, 2}) values.push_back(Scalar::from_int(field, v));
  std::vector<FIElement> out;
  const auto q = values.size();
  if (power(q, d) <= BigInt(kMaxLemmaElements)) {
    std::vector<std::size_t> digits(d, 0);
    while (true) {
      std::vector<Scalar> coords;
      for (auto dig : digits) coords.push_back(values[dig]);
      out.push_back(FIElement::from_coordinates(poset, field, coords));
      std::size_t i = d;
      while (i > 0 && ++digits[i - 1] == q) digits[--i] = 0;
      if (i == 0) break;
    }
    return out;
  }
  std::mt19937_64 rng(0);
  std::uniform_int_distribution<std::size_t> pick(0, q - 1);
  std::vector<std::size_t> digits(n, 0);
  for (std::uint64_t count = 0; count < kMaxLemmaElements; ++count) {
    auto a = FIElement::zero(poset, field);
    for (std::size_t x = 0; x < n; ++x) a[x] = values[digits[x]];
    for (std::size_t c = n; c < d; ++c) a[c] = values[pick(rng)];
    out.push_back(a);
    std::size_t i = n;
    while (i > 0 && ++digits[i - 1] == q) digits[--i] = 0;
    if (i == 0) break;
  }
  for (std::size_t c = 0; c < d; ++c) out.push_back(FIElement::unit_vector(poset, field, c));
  return out;
}

std::string partition_string(const Poset& poset, const std::vector<Subset>& parts) {
  std::string out = "{";
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? ", " : "") + format_subset(poset, parts[i]);
  return out + "}";
}

std::vector<Subset> all_subsets(std::size_t n) {
  std::vector<Subset> out;
  for (std::uint32_t bits = 0; bits < (1u << n); ++bits) out.emplace_back(n, bits);
  return out;
}

}  // namespace

PreserverSpec classify(const LinearMap& phi) {
  const auto& poset = phi.poset();
  const auto& field = phi.field();
  const std::size_t n = poset.size();
  const auto delta = FIElement::identity(phi.poset_ptr(), field);
  if (!is_unital(phi))
    throw ClassificationError("unital", "phi(delta) = " + to_string(phi.apply(delta)) + " is not delta");

  std::optional<SubsetMapTable> table;
  try {
    table = extract_lambda(phi);
  } catch (const ExtractionError& e) {
    throw ClassificationError("from-vf-to-lb", "phi(e_A) for A = " + format_subset(poset, e.set()) +
                                                   " has diagonal value " + e.value().to_string() + " at " +
                                                   poset.label(e.element()) + ", outside {0,1}");
  }

  std::optional<Lambda> lambda;
  if (is_z2(field)) {
    try {
      lambda = to_xor_endo(*table);
    } catch (const EndoError& e) {
      throw ClassificationError("lb-prese-symm-diff", std::string("lambda is not additive for symmetric difference: ") + e.what());
    }
  } else {
    std::vector<Subset> blocks;
    for (std::size_t x = 0; x < n; ++x) blocks.push_back(table->apply(Subset::singleton(n, x)));
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = x + 1; y < n; ++y)
        if (!(blocks[x] & blocks[y]).is_empty())
          throw ClassificationError("lb-separating", "lambda({" + poset.label(x) + "}) and lambda({" + poset.label(y) +
                                                         "}) share " + format_subset(poset, blocks[x] & blocks[y]));
    auto cover = Subset::empty(n);
    for (const auto& b : blocks) cover = cover | b;
    if (!cover.is_full())
      throw ClassificationError("union-lb(L_k(f))=X", "no singleton image contains " +
                                                          format_subset(poset, cover.complement()));
    auto part = PartitionEndo::from_blocks(blocks);
    const auto built = SubsetMapTable::tabulate(part);
    if (!(built == *table)) {
      for (const auto& a : all_subsets(n))
        if (!(built.apply(a) == table->apply(a)))
          throw ClassificationError("lb-preserves-diff-and-cap",
                                    "lambda(" + format_subset(poset, a) + ") = " + format_subset(poset, table->apply(a)) +
                                        " is not the union of the singleton images " +
                                        format_subset(poset, built.apply(a)));
    }
    lambda = part;
  }

  PreserverSpec spec{*lambda, extract_psi(phi)};
  const auto rebuilt = build_preserver(spec);
  if (!(rebuilt == phi)) {
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t c = n; c < phi.dimension(); ++c)
        if (!phi(y, c).is_zero()) {
          auto e = FIElement::unit_vector(phi.poset_ptr(), field, c);
          throw ClassificationError("vf-maps-J-to-J", "phi(" + to_string(e) + ") = " + to_string(phi.apply(e)) +
                                                          " leaves the radical");
        }
    throw ClassificationError(is_z2(field) ? "inv-pres-over-Z_2" : "vf(f)_D=sum-k-e_lb(L_k)",
                              "the diagonal block of phi is not determined by lambda");
  }
  return spec;
}

BigInt count_from_theorem(const Poset& poset, const FieldDesc& field) {
  if (!field.is_finite()) throw std::invalid_argument("count_from_theorem needs a finite field");
  const std::uint64_t n = poset.size(), d = poset.basis_size(), m = d - n, q = field.characteristic();
  if (is_z2(field)) return power(2, n * (n - 1)) * power(2, m * (d - 1));
  return power(n, n) * power(q, m * (d - 1));
}

std::vector<PreserverSpec> enumerate_specs(const PosetPtr& poset, const FieldDesc& field, const GateOptions& gates) {
  const auto total = count_from_theorem(*poset, field);
  enforce_gate("normal-form count", total, 1'000'000, gates);
  const std::size_t n = poset->size(), d = poset->basis_size(), m = d - n;
  const auto values = enumerate_field(field);
  const std::uint64_t q = values.size();
  const auto regime = is_z2(field) ? EndoRegime::xor_group : EndoRegime::boolean;
  const std::uint64_t lambdas = endo_count(n, regime);
  const std::uint64_t psis = static_cast<std::uint64_t>(power(q, m * (d - 1)));
  std::vector<PreserverSpec> out;
  for (std::uint64_t li = 0; li < lambdas; ++li) {
    Lambda lambda = regime == EndoRegime::xor_group ? Lambda(xor_endo_at(n, li)) : Lambda(partition_endo_at(n, li));
    for (std::uint64_t pi = 0; pi < psis; ++pi) {
      auto psi = LinearMap::zero(poset, field);
      std::uint64_t rest = pi;
      for (std::size_t r = d; r-- > n;)
        for (std::size_t c = d; c-- > 1;) {
          psi(r, c) = values[rest % q];
          rest /= q;
        }
      for (std::size_t r = n; r < d; ++r) {
        Scalar s = Scalar::zero(field);
        for (std::size_t x = 1; x < n; ++x) s += psi(r, x);
        psi(r, 0) = -s;
      }
      out.push_back(PreserverSpec{lambda, psi});
    }
  }
  return out;
}

PreserverSpec random_spec(const PosetPtr& poset, const FieldDesc& field, std::mt19937_64& rng) {
  const std::size_t n = poset->size(), d = poset->basis_size();
  std::optional<Lambda> lambda;
  if (is_z2(field)) {
    std::vector<Subset> columns(n, Subset::empty(n));
    std::bernoulli_distribution coin(0.5);
    for (std::size_t r = 0; r < n; ++r) {
      bool parity = false;
      for (std::size_t c = 0; c + 1 < n; ++c)
        if (coin(rng)) {
          columns[c] = columns[c].with(r);
          parity = !parity;
        }
      if (!parity) columns[n - 1] = columns[n - 1].with(r);
    }
    lambda = XorEndo::from_columns(columns);
  } else {
    std::uniform_int_distribution<std::size_t> owner(0, n - 1);
    std::vector<std::size_t> owners(n);
    for (auto& o : owners) o = owner(rng);
    lambda = PartitionEndo::from_owner(owners);
  }
  auto psi = LinearMap::zero(poset, field);
  for (std::size_t r = n; r < d; ++r) {
    Scalar s = Scalar::zero(field);
    for (std::size_t c = 1; c < d; ++c) {
      if (field.is_finite()) {
        std::uniform_int_distribution<std::uint32_t> v(0, field.characteristic() - 1);
        psi(r, c) = Scalar::from_int(field, v(rng));
      } else {
        std::uniform_int_distribution<int> v(-3, 3);
        psi(r, c) = Scalar::from_int(field, v(rng));
      }
      if (c < n) s += psi(r, c);
    }
    psi(r, 0) = -s;
  }
  return PreserverSpec{*lambda, psi};
}

LinearMap map_at(const PosetPtr& poset, const FieldDesc& field, std::uint64_t index) {
  const std::uint64_t q = field.characteristic();
  auto phi = LinearMap::zero(poset, field);
  const std::size_t d = phi.dimension();
  for (std::size_t k = d * d; k-- > 0;) {
    phi(k / d, k % d) = Scalar::from_int(field, static_cast<std::int64_t>(index % q));
    index /= q;
  }
  return phi;
}

std::uint64_t map_space_size(const Poset& poset, const FieldDesc& field, const GateOptions& gates) {
  if (!field.is_finite()) throw std::invalid_argument("brute-force enumeration needs a finite field");
  const std::uint64_t d = poset.basis_size();
  const auto size = power(field.characteristic(), d * d);
  enforce_gate("q^(d^2) for map enumeration", size, kMaxMapEnumeration, gates);
  if (size > BigInt(std::numeric_limits<std::uint64_t>::max()))
    throw GateExceeded("q^(d^2) for map enumeration", size, std::numeric_limits<std::uint64_t>::max());
  return static_cast<std::uint64_t>(size);
}

std::vector<std::uint64_t> scan_preservers(const PosetPtr& poset, const FieldDesc& field, std::uint64_t begin,
                                           std::uint64_t end) {
  const std::uint64_t q = field.characteristic();
  const std::size_t n = poset->size(), d = poset->basis_size();
  std::vector<std::uint64_t> digits(d * d);
  std::vector<std::uint64_t> out;
  GateOptions quiet{true};
  for (std::uint64_t index = begin; index < end; ++index) {
    std::uint64_t rest = index;
    for (std::size_t k = d * d; k-- > 0;) {
      digits[k] = rest % q;
      rest /= q;
    }
    // Unital and radical-column filters on raw residues before building the map.
    bool keep = true;
    for (std::size_t r = 0; r < d && keep; ++r) {
      std::uint64_t s = 0;
      for (std::size_t x = 0; x < n; ++x) s += digits[r * d + x];
      keep = s % q == (r < n ? 1u : 0u);
      if (r < n)
        for (std::size_t c = n; c < d && keep; ++c) keep = digits[r * d + c] == 0;
    }
    if (!keep) continue;
    if (preserves_invertibility(map_at(poset, field, index), quiet)) out.push_back(index);
  }
  return out;
}

std::size_t CensusReport::strong_count() const {
  return std::count_if(records.begin(), records.end(), [](const auto& r) { return r.strong; });
}
std::size_t CensusReport::injective_lambda_count() const {
  return std::count_if(records.begin(), records.end(), [](const auto& r) { return r.lambda_injective; });
}
std::size_t CensusReport::bijective_count() const {
  return std::count_if(records.begin(), records.end(), [](const auto& r) { return r.bijective; });
}
bool CensusReport::consistent() const {
  return BigInt(oracle_count) == theorem_count && matches_normal_forms && records.size() == oracle_count;
}

CensusReport enumerate_preservers(const PosetPtr& poset, const FieldDesc& field, const CensusOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  CensusReport report;
  report.poset_id = options.poset_id.empty() ? poset_literal(*poset) : options.poset_id;
  report.poset = poset;
  report.field = field;
  report.maps_searched = map_space_size(*poset, field, options.gates);
  report.theorem_count = count_from_theorem(*poset, field);

  auto parts = run_ranges<std::vector<std::uint64_t>>(
      report.maps_searched, options.threads,
      [&](std::uint64_t b, std::uint64_t e) { return scan_preservers(poset, field, b, e); });
  std::set<std::vector<std::uint32_t>> survivors;
  bool all_classified = true;
  for (const auto& part : parts)
    for (auto index : part) {
      ++report.oracle_count;
      auto phi = map_at(poset, field, index);
      survivors.insert(residues(phi));
      try {
        auto spec = classify(phi);
        report.records.push_back(CensusRecord{index, phi, spec, is_strong(phi, options.gates),
                                              lambda_injective(spec.lambda), is_bijective(phi),
                                              lambda_automorphism(spec.lambda), psi_bijective_on_radical(spec.psi)});
      } catch (const ClassificationError&) {
        all_classified = false;
      }
    }

  std::set<std::vector<std::uint32_t>> built;
  for (const auto& spec : enumerate_specs(poset, field, options.gates)) built.insert(residues(build_preserver(spec)));
  report.matches_normal_forms = all_classified && built == survivors;
  report.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

bool all_pass(const std::vector<LemmaVerdict>& verdicts) {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const auto& v) { return !v.applicable || v.pass; });
}

std::vector<LemmaVerdict> check_lemmas(const LinearMap& phi, const std::string& instance) {
  const auto& poset = phi.poset();
  const auto& field = phi.field();
  const std::size_t n = poset.size(), d = phi.dimension();
  if (n > kMaxExhaustiveTableSize) throw GateExceeded("|X| for the lemma suite", n, kMaxExhaustiveTableSize);
  const bool z2 = is_z2(field);
  std::vector<LemmaVerdict> out;

  {
    std::optional<std::string> w;
    for (std::size_t c = n; c < d && !w; ++c) {
      auto e = FIElement::unit_vector(phi.poset_ptr(), field, c);
      auto image = phi.apply(e);
      if (!diagonal_part(image).is_zero()) w = "phi(" + to_string(e) + ") = " + to_string(image) + " is not in J";
    }
    out.push_back(verdict("vf-maps-J-to-J", instance, w));
  }

  const auto elements = lemma_elements(phi);
  {
    std::optional<std::string> w;
    for (const auto& a : elements) {
      auto lhs = diagonal_part(phi.apply(a));
      auto rhs = diagonal_part(phi.apply(diagonal_part(a)));
      if (!(lhs == rhs)) {
        w = "alpha = " + to_string(a) + ": phi(alpha)_D = " + to_string(lhs) + ", phi(alpha_D)_D = " + to_string(rhs);
        break;
      }
    }
    out.push_back(verdict("vf(f)_D-is-vf(f_D)_D", instance, w));
  }

  std::optional<SubsetMapTable> table;
  {
    std::optional<std::string> w;
    try {
      table = extract_lambda(phi);
    } catch (const ExtractionError& e) {
      w = "phi(e_A)_{xx} = " + e.value().to_string() + " for A = " + format_subset(poset, e.set()) + ", x = " +
          poset.label(e.element());
    }
    out.push_back(verdict("from-vf-to-lb", instance, w));
  }
  const std::string no_lambda = "lambda is undefined (from-vf-to-lb fails)";
  const auto subsets = all_subsets(n);
  const auto full = Subset::full(n);

  if (!z2) {
    std::optional<std::string> w = table ? std::nullopt : std::optional(no_lambda);
    for (std::size_t i = 0; table && i < subsets.size() && !w; ++i)
      for (std::size_t j = 0; j < subsets.size() && !w; ++j) {
        const auto &a = subsets[i], &b = subsets[j];
        if (!(a & b).is_empty()) continue;
        auto meet = table->apply(a) & table->apply(b);
        if (!meet.is_empty())
          w = "A = " + format_subset(poset, a) + ", B = " + format_subset(poset, b) + " are disjoint but lambda(A) & lambda(B) = " +
              format_subset(poset, meet);
      }
    out.push_back(verdict("lb-separating", instance, w));
  }

  if (!z2) {
    std::optional<std::string> w = table ? std::nullopt : std::optional(no_lambda);
    if (table && !(table->apply(full) == full))
      w = "lambda(X) = " + format_subset(poset, table->apply(full));
    for (std::size_t i = 0; table && i < subsets.size() && !w; ++i) {
      const auto& a = subsets[i];
      if (!(table->apply(full - a) == full - table->apply(a)))
        w = "lambda(X \\ " + format_subset(poset, a) + ") = " + format_subset(poset, table->apply(full - a)) +
            " but X \\ lambda(A) = " + format_subset(poset, full - table->apply(a));
      for (std::size_t j = 0; j < subsets.size() && !w; ++j) {
        const auto& b = subsets[j];
        if (!(table->apply(a & b) == (table->apply(a) & table->apply(b))))
          w = "A = " + format_subset(poset, a) + ", B = " + format_subset(poset, b) + ": lambda(A & B) = " +
              format_subset(poset, table->apply(a & b)) + " but lambda(A) & lambda(B) = " +
              format_subset(poset, table->apply(a) & table->apply(b));
      }
    }
    out.push_back(verdict("lb-preserves-diff-and-cap", instance, w));
  }

  {
    std::optional<std::string> w = table ? std::nullopt : std::optional(no_lambda);
    const std::size_t max_blocks = field.is_finite() ? std::min<std::size_t>(n, field.characteristic()) : n;
    if (table)
      for (const auto& parts : set_partitions(n, max_blocks)) {
        auto cover = Subset::empty(n);
        for (const auto& p : parts) cover = cover | table->apply(p);
        if (!cover.is_full()) {
          w = "partition " + partition_string(poset, parts) + ": union of images is " + format_subset(poset, cover);
          break;
        }
      }
    out.push_back(verdict("union-lb(L_k(f))=X", instance, w));
  }

  if (!z2) {
    std::optional<std::string> w = table ? std::nullopt : std::optional(no_lambda);
    for (std::size_t i = 0; table && i < elements.size() && !w; ++i) {
      const auto& a = elements[i];
      auto expected = FIElement::zero(phi.poset_ptr(), field);
      std::vector<Scalar> seen;
      for (std::size_t x = 0; x < n; ++x) {
        const auto& k = a[x];
        if (std::find(seen.begin(), seen.end(), k) != seen.end()) continue;
        seen.push_back(k);
        expected += k * FIElement::indicator(phi.poset_ptr(), field, table->apply(level_set(a, k)));
      }
      auto actual = diagonal_part(phi.apply(a));
      if (!(actual == expected))
        w = "alpha = " + to_string(a) + ": phi(alpha)_D = " + to_string(actual) + " but the level-set formula gives " +
            to_string(expected);
    }
    out.push_back(verdict("vf(f)_D=sum-k-e_lb(L_k)", instance, w));
  }

  if (z2) {
    std::optional<std::string> w = table ? std::nullopt : std::optional(no_lambda);
    if (table && !(table->apply(full) == full)) w = "lambda(X) = " + format_subset(poset, table->apply(full));
    for (std::size_t i = 0; table && i < subsets.size() && !w; ++i)
      for (std::size_t j = 0; j < subsets.size() && !w; ++j) {
        const auto &a = subsets[i], &b = subsets[j];
        if (!(table->apply(a ^ b) == (table->apply(a) ^ table->apply(b))))
          w = "A = " + format_subset(poset, a) + ", B = " + format_subset(poset, b) + ": lambda(A xor B) = " +
              format_subset(poset, table->apply(a ^ b)) + " but lambda(A) xor lambda(B) = " +
              format_subset(poset, table->apply(a) ^ table->apply(b));
      }
    out.push_back(verdict("lb-prese-symm-diff", instance, w));
  }
  return out;
}

std::vector<LemmaVerdict> verify_lemma_suite(const PosetPtr& poset, const FieldDesc& field, const Sampling& sampling,
                                             const CensusOptions& options) {
  std::vector<LemmaVerdict> out;
  const std::string where = options.poset_id.empty() ? describe(*poset, field) : options.poset_id + " over " + field.literal();
  if (sampling.exhaustive) {
    auto census = enumerate_preservers(poset, field, options);
    for (const auto& rec : census.records) {
      auto vs = check_lemmas(rec.phi, where + ", map #" + std::to_string(rec.index));
      out.insert(out.end(), vs.begin(), vs.end());
    }
    if (!census.consistent())
      out.push_back(verdict("census", where, "oracle found " + std::to_string(census.oracle_count) +
                                                 " preservers; normal forms predict " + census.theorem_count.str()));
    return out;
  }
  std::mt19937_64 rng(sampling.seed);
  for (std::uint64_t t = 0; t < sampling.trials; ++t) {
    auto phi = build_preserver(random_spec(poset, field, rng));
    auto vs = check_lemmas(phi, where + ", seed " + std::to_string(sampling.seed) + " trial " + std::to_string(t));
    out.insert(out.end(), vs.begin(), vs.end());
  }
  return out;
}

std::vector<LemmaVerdict> verify_criteria(const PreserverSpec& spec, const GateOptions& gates) {
  spec.validate();
  const auto& field = spec.psi.field();
  if (!field.is_finite()) throw std::invalid_argument("verify_criteria needs a finite field");
  const auto phi = build_preserver(spec);
  const bool z2 = is_z2(field);
  const bool strong = is_strong(phi, gates);
  const bool injective = lambda_injective(spec.lambda);
  const bool bijective = is_bijective(phi);
  const bool automorphism = lambda_automorphism(spec.lambda);
  const bool psi_j = psi_bijective_on_radical(spec.psi);
  auto yn = [](bool b) { return b ? std::string("yes") : std::string("no"); };
  const std::string where = describe(spec.psi.poset(), field) + ", lambda " + format_lambda(spec.psi.poset(), spec.lambda);

  std::vector<LemmaVerdict> out;
  auto strong_witness = [&]() -> std::optional<std::string> {
    if (strong == injective) return std::nullopt;
    std::string w = "strong: " + yn(strong) + ", lambda injective: " + yn(injective);
    if (auto found = check_strong(phi, gates).witness) w += "; " + found->description;
    return w;
  };
  out.push_back(verdict(z2 ? "vf-strong<=>lb-injective" : "vf-strong<=>lb(A)-nonempty",
                        where + " (strong: " + yn(strong) + ", lambda injective: " + yn(injective) + ")",
                        strong_witness()));
  out.push_back(verdict(z2 ? "bij-strong-over-Z_2" : "bij-strong-|K|>2",
                        where + " (bijective and strong: " + yn(bijective && strong) + ", lambda automorphism: " +
                            yn(automorphism) + ", psi bijective on J: " + yn(psi_j) + ")",
                        (bijective && strong) == (automorphism && psi_j)
                            ? std::nullopt
                            : std::optional<std::string>("the two sides disagree")));
  out.push_back(verdict("bijective-is-strong", where + " (bijective: " + yn(bijective) + ", strong: " + yn(strong) + ")",
                        !bijective || strong ? std::nullopt
                                             : std::optional<std::string>("bijective preserver that is not strong")));
  return out;
}

namespace {

struct InverseScan {
  std::vector<std::uint64_t> unital_inverse;
  std::vector<std::uint64_t> unital_jordan;
  std::vector<std::uint64_t> inverse;
  std::vector<std::uint64_t> bijective_inverse;
  std::vector<std::uint64_t> bijective_pm_auto;
};

}  // namespace

std::vector<LemmaVerdict> verify_inverse_preserver_results(const PosetPtr& poset, const FieldDesc& field,
                                                           const CensusOptions& options) {
  const std::string where =
      (options.poset_id.empty() ? poset_literal(*poset) : options.poset_id) + " over " + field.literal();
  if (!field.is_finite()) throw std::invalid_argument("the inverse-preserver suite enumerates maps; it needs a finite field");
  if (field.characteristic() == 2) {
    LemmaVerdict skipped;
    skipped.lemma = "vf-pres-inverses=>vf-Jordan-homo";
    skipped.instance = where + ": not applicable: char 2 (see example z2-not-jordan)";
    skipped.applicable = false;
    return {skipped, reproduce_example("z2-not-jordan")};
  }

  const auto total = map_space_size(*poset, field, options.gates);
  const auto delta = FIElement::identity(poset, field);
  const auto minus_delta = -delta;
  GateOptions quiet{true};
  auto parts = run_ranges<InverseScan>(total, options.threads, [&](std::uint64_t b, std::uint64_t e) {
    InverseScan s;
    for (std::uint64_t index = b; index < e; ++index) {
      const auto phi = map_at(poset, field, index);
      const auto unit_image = phi.apply(delta);
      const bool unital = unit_image == delta;
      const bool pm_unital = unital || unit_image == minus_delta;
      const bool preserver = preserves_invertibility(phi, quiet);
      if (!pm_unital && !preserver) continue;
      const bool inverse = preserver && preserves_inverses(phi, options.gates);
      if (inverse) s.inverse.push_back(index);
      if (unital && inverse) s.unital_inverse.push_back(index);
      if (unital && is_jordan_endo(phi)) s.unital_jordan.push_back(index);
      if ((inverse || pm_unital) && is_bijective(phi)) {
        if (inverse) s.bijective_inverse.push_back(index);
        if (pm_unital) {
          const auto signed_phi = left_multiply(unit_image, phi);
          if (is_multiplicative(signed_phi) || is_antimultiplicative(signed_phi)) s.bijective_pm_auto.push_back(index);
        }
      }
    }
    return s;
  });
  InverseScan all;
  for (auto& p : parts) {
    all.unital_inverse.insert(all.unital_inverse.end(), p.unital_inverse.begin(), p.unital_inverse.end());
    all.unital_jordan.insert(all.unital_jordan.end(), p.unital_jordan.begin(), p.unital_jordan.end());
    all.inverse.insert(all.inverse.end(), p.inverse.begin(), p.inverse.end());
    all.bijective_inverse.insert(all.bijective_inverse.end(), p.bijective_inverse.begin(), p.bijective_inverse.end());
    all.bijective_pm_auto.insert(all.bijective_pm_auto.end(), p.bijective_pm_auto.begin(), p.bijective_pm_auto.end());
  }

  auto first_difference = [&](const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b,
                              const std::string& a_name, const std::string& b_name) -> std::optional<std::string> {
    std::vector<std::uint64_t> only_a, only_b;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(only_a));
    std::set_difference(b.begin(), b.end(), a.begin(), a.end(), std::back_inserter(only_b));
    if (!only_a.empty()) return "map #" + std::to_string(only_a[0]) + " is " + a_name + " but not " + b_name;
    if (!only_b.empty()) return "map #" + std::to_string(only_b[0]) + " is " + b_name + " but not " + a_name;
    return std::nullopt;
  };

  std::vector<LemmaVerdict> out;
  out.push_back(verdict("vf-pres-inverses=>vf-Jordan-homo",
                        where + ": " + std::to_string(all.unital_inverse.size()) + " unital inverse preservers, " +
                            std::to_string(all.unital_jordan.size()) + " unital Jordan endomorphisms",
                        first_difference(all.unital_inverse, all.unital_jordan, "a unital inverse preserver",
                                         "a unital Jordan endomorphism")));

  const auto idempotents = all_idempotents(poset, field, options.gates);
  {
    std::optional<std::string> w;
    for (auto index : all.unital_inverse) {
      auto v = check_idempotents(map_at(poset, field, index), options.gates);
      if (!v) {
        w = "map #" + std::to_string(index) + ": " + v.witness->description;
        break;
      }
    }
    out.push_back(verdict("vf-unital-pres-inverses=>vf-pres-idemp",
                          where + ": " + std::to_string(all.unital_inverse.size()) + " unital inverse preservers", w));
  }
  {
    std::optional<std::string> w_prop, w_square, w_comm;
    for (auto index : all.inverse) {
      const auto phi = map_at(poset, field, index);
      const auto one = phi.apply(delta);
      if (!w_square && !(one * one == delta))
        w_square = "map #" + std::to_string(index) + ": phi(delta)^2 = " + to_string(one * one);
      if (!w_prop) {
        auto v = check_idempotents(left_multiply(one, phi), options.gates);
        if (!v) w_prop = "map #" + std::to_string(index) + ", under phi(delta)phi: " + v.witness->description;
      }
      for (std::size_t i = 0; i < idempotents.size() && !w_comm; ++i) {
        const auto pe = phi.apply(idempotents[i]);
        const auto sq = pe * pe;
        if (!(pe * one == sq) || !(one * pe == sq))
          w_comm = "map #" + std::to_string(index) + ", e = " + to_string(idempotents[i]) + ": phi(e)phi(delta) = " +
                   to_string(pe * one) + ", phi(delta)phi(e) = " + to_string(one * pe) + ", phi(e)^2 = " + to_string(sq);
      }
    }
    const auto count = std::to_string(all.inverse.size()) + " inverse preservers";
    out.push_back(verdict("vf-pres-inverses=>vf(1)vf-pres-idemp", where + ": " + count, w_prop));
    out.push_back(verdict("vf(1_A)^2=1_B", where + ": " + count, w_square));
    out.push_back(verdict("vf(e)vf(1)=vf(1)vf(e)=vf(e)^2",
                          where + ": " + count + " x " + std::to_string(idempotents.size()) + " idempotents", w_comm));
  }
  {
    LemmaVerdict v = verdict("vf-pres-inverses=>vf-pm-auto-or-anti-auto",
                             where + ": " + std::to_string(all.bijective_inverse.size()) +
                                 " bijective inverse preservers, " + std::to_string(all.bijective_pm_auto.size()) +
                                 " +-automorphisms or +-anti-automorphisms",
                             std::nullopt);
    if (!poset->is_connected()) {
      v.applicable = false;
      v.instance += " (not applicable: poset is not connected)";
    } else {
      std::optional<std::string> w;
      for (auto index : all.bijective_inverse) {
        const auto phi = map_at(poset, field, index);
        const auto one = phi.apply(delta);
        if (!(one == delta) && !(one == minus_delta)) {
          w = "map #" + std::to_string(index) + ": phi(delta) = " + to_string(one) + " is not +-delta";
          break;
        }
        if (!is_central(one)) {
          w = "map #" + std::to_string(index) + ": phi(delta) is not central";
          break;
        }
        if (!is_jordan_endo(left_multiply(one, phi))) {
          w = "map #" + std::to_string(index) + ": phi(delta)phi is not a Jordan endomorphism";
          break;
        }
      }
      if (!w)
        w = first_difference(all.bijective_inverse, all.bijective_pm_auto, "a bijective inverse preserver",
                             "a +-automorphism or +-anti-automorphism");
      v.pass = !w;
      v.witness = w;
    }
    out.push_back(v);
  }
  return out;
}

std::vector<std::string> example_ids() { return {"z2-nonseparating", "diagonal-truncation", "z2-not-jordan"}; }

LinearMap example_map(const std::string& id) {
  if (id == "z2-nonseparating") {
    auto poset = share(Poset::from_relations({"x", "y", "z"}, {}));
    const auto f2 = FieldDesc::prime(2);
    auto lambda = XorEndo::from_columns({Subset::of(3, {0}), Subset::of(3, {0, 1}), Subset::of(3, {0, 2})});
    return build_preserver(PreserverSpec{lambda, LinearMap::zero(poset, f2)});
  }
  if (id == "diagonal-truncation") {
    auto poset = share(Poset::chain(2));
    const auto f3 = FieldDesc::prime(3);
    return build_preserver(PreserverSpec{PartitionEndo::identity(2), LinearMap::zero(poset, f3)});
  }
  if (id == "z2-not-jordan") {
    auto poset = share(Poset::chain(3));
    const auto f2 = FieldDesc::prime(2);
    auto e = [&](const char* text) { return parse_element(poset, f2, text); };
    // Basis order: e[1], e[2], e[3], e[1,2], e[1,3], e[2,3].
    return LinearMap::from_images(poset, f2,
                                  {e("e[1]"), e("e[1] + e[2]"), e("e[1] + e[3]"), e("e[1,2]"), e("0"), e("0")});
  }
  throw std::invalid_argument("unknown example '" + id + "'; known: z2-nonseparating, diagonal-truncation, z2-not-jordan");
}

LemmaVerdict reproduce_example(const std::string& id) {
  const auto phi = example_map(id);
  const auto& poset = phi.poset();
  const auto& field = phi.field();
  const std::string where = describe(poset, field);
  std::vector<std::string> failures;
  auto expect = [&](bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  };
  std::string evidence;

  if (id == "z2-nonseparating") {
    const auto n = poset.size();
    const auto x = Subset::of(n, {0}), y = Subset::of(n, {1}), z = Subset::of(n, {2});
    // alpha -> (a_xx + a_yy + a_zz) e_x + a_yy e_y + a_zz e_z on the diagonal.
    const auto one = Scalar::one(field);
    auto expected = LinearMap::zero(phi.poset_ptr(), field);
    expected(0, 0) = expected(0, 1) = expected(0, 2) = one;
    expected(1, 1) = one;
    expected(2, 2) = one;
    expect(phi == expected, "map differs from the stated diagonal action");
    expect(is_unital(phi), "not unital");
    expect(preserves_invertibility(phi), "not an invertibility preserver");
    expect(is_strong(phi), "not strong");
    const auto table = extract_lambda(phi);
    expect(table.apply(x) == x, "lambda({x}) != {x}");
    expect(table.apply(y) == (x | y), "lambda({y}) != {x,y}");
    expect(!is_separating(table), "lambda is separating");
    const auto spec = classify(phi);
    expect(std::holds_alternative<XorEndo>(spec.lambda), "classified lambda is not an xor-endomorphism");
    evidence = "lambda({x}) = " + format_subset(poset, table.apply(x)) + ", lambda({y}) = " +
               format_subset(poset, table.apply(y)) + ", lambda({z}) = " + format_subset(poset, table.apply(z)) +
               "; {y} and {z} are disjoint but lambda({y}) & lambda({z}) = " +
               format_subset(poset, table.apply(y) & table.apply(z));
  } else if (id == "diagonal-truncation") {
    expect(is_unital(phi), "not unital");
    expect(preserves_invertibility(phi), "not an invertibility preserver");
    expect(is_strong(phi), "not strong");
    const auto r = rank(phi);
    expect(r < phi.dimension(), "bijective");
    const auto spec = classify(phi);
    const auto* part = std::get_if<PartitionEndo>(&spec.lambda);
    expect(part && *part == PartitionEndo::identity(poset.size()), "lambda is not the identity");
    expect(spec.psi == LinearMap::zero(phi.poset_ptr(), field), "psi is not zero");
    const auto e12 = FIElement::basis(phi.poset_ptr(), field, 0, 1);
    expect(phi.apply(e12).is_zero(), "e[1,2] is not in the kernel");
    evidence = "rank " + std::to_string(r) + " of " + std::to_string(phi.dimension()) + "; phi(" + to_string(e12) +
               ") = 0, so phi is neither injective nor surjective; lambda = identity, psi = 0";
  } else {
    expect(is_unital(phi), "not unital");
    expect(preserves_invertibility(phi), "not an invertibility preserver");
    expect(preserves_inverses(phi), "does not preserve inverses");
    const auto jordan = check_jordan(phi);
    expect(!jordan.holds, "is a Jordan endomorphism");
    if (!jordan.holds) {
      const auto& w = jordan.witness->elements;
      const auto e2 = FIElement::basis(phi.poset_ptr(), field, 1, 1);
      const auto e12 = FIElement::basis(phi.poset_ptr(), field, 0, 1);
      expect(w[0] == e2 && w[1] == e12, "first failing basis pair is not (e[2], e[1,2])");
      expect(w[2] == e12 && w[3].is_zero(), "witness values differ from phi(e[2] o e[1,2]) = e[1,2], 0");
      evidence = jordan.witness->description;
    }
  }

  LemmaVerdict v;
  v.lemma = id;
  v.instance = where;
  v.pass = failures.empty();
  if (failures.empty()) {
    v.witness = evidence;
  } else {
    std::string all;
    for (const auto& f : failures) all += (all.empty() ? "" : "; ") + f;
    v.witness = all;
  }
  return v;
}

}  // namespace incidence

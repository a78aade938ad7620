#include "sfconj/extensions.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace sfconj {

FiniteAutomorphism::FiniteAutomorphism(const FiniteGroupTable& group, std::vector<Element> images)
    : images_(std::move(images)) {
  const std::size_t n = group.order();
  if (images_.size() != n) throw std::invalid_argument("automorphism: wrong number of images");
  std::vector<bool> hit(n, false);
  for (Element a : images_) {
    if (a >= n || hit[a]) throw std::invalid_argument("automorphism: not a permutation");
    hit[a] = true;
  }
  for (Element a = 0; a < n; ++a) {
    for (Element b = 0; b < n; ++b) {
      if (images_[group.mul(a, b)] != group.mul(images_[a], images_[b])) {
        throw std::invalid_argument("automorphism: not a homomorphism");
      }
    }
  }
}

FiniteAutomorphism FiniteAutomorphism::identity(const FiniteGroupTable& group) {
  std::vector<Element> images(group.order());
  for (Element a = 0; a < group.order(); ++a) images[a] = a;
  return FiniteAutomorphism(std::move(images));
}

FiniteAutomorphism FiniteAutomorphism::conjugation(const FiniteGroupTable& group, Element w) {
  std::vector<Element> images(group.order());
  for (Element a = 0; a < group.order(); ++a) images[a] = group.conjugate(a, w);
  return FiniteAutomorphism(std::move(images));
}

FiniteAutomorphism FiniteAutomorphism::then(const FiniteAutomorphism& next) const {
  std::vector<Element> out(images_.size());
  for (std::size_t a = 0; a < images_.size(); ++a) out[a] = next.images_[images_[a]];
  return FiniteAutomorphism(std::move(out));
}

FiniteAutomorphism FiniteAutomorphism::power(std::size_t n) const {
  std::vector<Element> id(images_.size());
  for (std::size_t a = 0; a < id.size(); ++a) id[a] = static_cast<Element>(a);
  FiniteAutomorphism out(std::move(id));
  for (std::size_t i = 0; i < n; ++i) out = out.then(*this);
  return out;
}

std::optional<Element> inner_witness(const FiniteGroupTable& group, const FiniteAutomorphism& phi) {
  for (Element x = 0; x < group.order(); ++x) {
    bool ok = true;
    for (Element g = 0; g < group.order() && ok; ++g) ok = phi(g) == group.conjugate(g, x);
    if (ok) return x;
  }
  return std::nullopt;
}

VirtuallyInnerFinite virtually_inner(const FiniteGroupTable& group, const FiniteAutomorphism& phi) {
  FiniteAutomorphism power = phi;
  for (std::size_t n = 1;; ++n) {
    if (auto x = inner_witness(group, power)) return {n, *x};
    power = power.then(phi);
  }
}

std::vector<std::vector<Element>> twisted_classes_finite(const FiniteGroupTable& s,
                                                         const FiniteAutomorphism& phi) {
  std::vector<bool> seen(s.order(), false);
  std::vector<std::vector<Element>> out;
  for (Element g = 0; g < s.order(); ++g) {
    if (seen[g]) continue;
    std::set<Element> cls;
    for (Element h = 0; h < s.order(); ++h) cls.insert(s.mul(s.inv(phi(h)), s.mul(g, h)));
    for (Element e : cls) seen[e] = true;
    out.emplace_back(cls.begin(), cls.end());
  }
  return out;
}

bool TwistedReport::all() const {
  return std::all_of(ok.begin(), ok.end(), [](bool b) { return b; });
}

namespace {

void require_extension(const FiniteGroupTable& g, const std::vector<Element>& s, Element t) {
  if (!std::is_sorted(s.begin(), s.end()) || !g.is_normal(s)) {
    throw std::invalid_argument("S must be a sorted normal subgroup");
  }
  if (t >= g.order()) throw std::invalid_argument("t is not an element of G");
  std::vector<Element> gens = s;
  gens.push_back(t);
  if (g.subgroup(gens).size() != g.order()) throw std::invalid_argument("G is not generated by S and t");
}

// Automorphism of the induced table of S given by s -> w^-1 s w.
FiniteAutomorphism induced_conjugation(const FiniteGroupTable& g, const FiniteGroupTable& s_table,
                                       const std::vector<Element>& s, Element w) {
  std::vector<Element> images(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    const Element c = g.conjugate(s[i], w);
    images[i] = static_cast<Element>(std::lower_bound(s.begin(), s.end(), c) - s.begin());
  }
  return FiniteAutomorphism(s_table, std::move(images));
}

}  // namespace

TwistedReport verify_prop_twisted(const FiniteGroupTable& g, const std::vector<Element>& s,
                                  Element t) {
  require_extension(g, s, t);
  const FiniteGroupTable s_table = induced_table(g, s);
  const FiniteAutomorphism phi = induced_conjugation(g, s_table, s, t);
  const auto classes = twisted_classes_finite(s_table, phi);
  std::vector<std::size_t> which(s.size());
  for (std::size_t c = 0; c < classes.size(); ++c) {
    for (Element e : classes[c]) which[e] = c;
  }
  TwistedReport report;
  for (std::size_t i = 0; i < s.size(); ++i) {
    std::vector<Element> rhs;
    for (Element j : classes[which[i]]) rhs.push_back(g.mul(t, s[j]));
    std::sort(rhs.begin(), rhs.end());
    report.ok.push_back(g.conjugacy_class(g.mul(t, s[i])) == rhs);
  }
  return report;
}

ConjugacyDecomposition conjugacy_decomposition(const FiniteGroupTable& g,
                                               const std::vector<Element>& s, Element element) {
  if (!std::is_sorted(s.begin(), s.end()) || !g.is_normal(s)) {
    throw std::invalid_argument("S must be a sorted normal subgroup");
  }
  const FiniteGroupTable s_table = induced_table(g, s);
  ConjugacyDecomposition out;
  std::vector<bool> covered(g.order(), false);
  for (Element x = 0; x < g.order(); ++x) {
    if (covered[x]) continue;
    out.coset_representatives.push_back(x);
    for (Element e : s) covered[g.mul(x, e)] = true;
  }
  std::set<Element> united;
  for (Element x : out.coset_representatives) {
    const Element gi = g.conjugate(element, x);
    out.conjugates.push_back(gi);
    const FiniteAutomorphism phi = induced_conjugation(g, s_table, s, gi);
    // [1]_phi = {phi(h)^-1 h}.
    std::set<Element> piece;
    for (Element h = 0; h < s.size(); ++h) {
      const Element v = s[s_table.mul(s_table.inv(phi(h)), h)];
      piece.insert(g.mul(gi, v));
    }
    united.insert(piece.begin(), piece.end());
    out.pieces.emplace_back(piece.begin(), piece.end());
  }
  out.conjugacy_class = g.conjugacy_class(element);
  out.holds = std::vector<Element>(united.begin(), united.end()) == out.conjugacy_class;
  return out;
}

namespace {

CatalogEntry make_entry(std::string name, const FiniteGroupTable& g,
                        const std::vector<Element>& s_gens, Element t) {
  return {std::move(name), g, g.subgroup(s_gens), t};
}

Element find_label(const FiniteGroupTable& g, const std::string& label) {
  for (Element a = 0; a < g.order(); ++a) {
    if (g.label(a) == label) return a;
  }
  throw std::logic_error("catalog: missing element " + label);
}

}  // namespace

std::vector<CatalogEntry> extension_catalog() {
  std::vector<CatalogEntry> out;

  const auto s3 = symmetric_group(3);
  out.push_back(make_entry("S3 > A3", s3.table, {s3.generators[1]}, s3.generators[0]));

  const auto d8 = dihedral_group(4);
  out.push_back(make_entry("D8 > Z4", d8.table, {d8.generators[0]}, d8.generators[1]));

  const auto z2 = cyclic_group(2);
  {
    const auto g = direct_product(s3.table, z2.table);
    std::vector<Element> s_gens{s3.generators[0] * 2, s3.generators[1] * 2};
    out.push_back(make_entry("S3 x Z2 > S3", g, s_gens, 1));
  }

  const auto z8 = cyclic_group(8);
  out.push_back(make_entry("Z8 > Z4", z8.table, {z8.table.mul(1, 1)}, 1));

  const auto q8 = quaternion_group();
  out.push_back(make_entry("Q8 > <i>", q8.table, {q8.generators[0]}, q8.generators[1]));

  const auto d12 = dihedral_group(6);
  out.push_back(make_entry("D12 > Z6", d12.table, {d12.generators[0]}, d12.generators[1]));

  const auto a4 = alternating_group(4);
  out.push_back(make_entry("A4 > V4", a4.table,
                           {find_label(a4.table, "(0 1)(2 3)"), find_label(a4.table, "(0 2)(1 3)")},
                           a4.generators[0]));

  const auto s4 = symmetric_group(4);
  {
    std::vector<Element> squares;
    for (Element a = 0; a < s4.table.order(); ++a) squares.push_back(s4.table.mul(a, a));
    out.push_back(make_entry("S4 > A4", s4.table, squares, s4.generators[0]));
  }

  const auto heis3 = heisenberg_group(3);
  out.push_back(make_entry("Heis(3) > <Y, Z>", heis3.table,
                           {heis3.generators[1], heis3.generators[2]}, heis3.generators[0]));

  {
    const auto g = direct_product(d8.table, z2.table);
    out.push_back(make_entry("D8 x Z2 > Z4 x Z2", g, {d8.generators[0] * 2, 1},
                             d8.generators[1] * 2));
  }

  const auto z7z3 = metacyclic_group(7, 3, 2);
  out.push_back(make_entry("Z7 : Z3 > Z7", z7z3.table, {z7z3.generators[0]}, z7z3.generators[1]));

  const auto z5z4 = metacyclic_group(5, 4, 2);
  out.push_back(make_entry("Z5 : Z4 > Z5", z5z4.table, {z5z4.generators[0]}, z5z4.generators[1]));

  const auto sl23 = special_linear_2_3();
  out.push_back(make_entry("SL(2,3) > Q8", sl23.table, {sl23.generators[0], sl23.generators[1]},
                           sl23.generators[2]));

  out.push_back(make_entry("Z2 > 1", z2.table, {}, 1));

  const auto d16 = dihedral_group(8);
  out.push_back(make_entry("D16 > Z8", d16.table, {d16.generators[0]}, d16.generators[1]));

  return out;
}

nlohmann::json to_json(const CatalogEntry& e) {
  const FiniteGroupTable s_table = induced_table(e.group, e.subgroup);
  std::vector<Element> phi(e.subgroup.size());
  for (std::size_t i = 0; i < e.subgroup.size(); ++i) {
    const Element c = e.group.conjugate(e.subgroup[i], e.t);
    phi[i] = static_cast<Element>(
        std::lower_bound(e.subgroup.begin(), e.subgroup.end(), c) - e.subgroup.begin());
  }
  return {{"name", e.name},
          {"group", to_json(e.group)},
          {"subgroup", e.subgroup},
          {"t", e.t},
          {"automorphism", phi}};
}

CatalogEntry catalog_entry_from_json(const nlohmann::json& j) {
  CatalogEntry e{j.at("name").get<std::string>(), group_from_json(j.at("group")),
                 j.at("subgroup").get<std::vector<Element>>(), j.at("t").get<Element>()};
  std::sort(e.subgroup.begin(), e.subgroup.end());
  require_extension(e.group, e.subgroup, e.t);
  if (j.contains("automorphism")) {
    const auto expected = to_json(e).at("automorphism");
    if (j.at("automorphism") != expected) {
      throw std::invalid_argument("catalog entry: automorphism is not conjugation by t");
    }
  }
  return e;
}

// ---------------------------------------------------------------------------

Carrier Carrier::free(std::size_t rank, std::vector<std::string> names) {
  if (rank == 0) throw std::invalid_argument("free carrier of rank 0");
  if (names.empty()) {
    if (rank <= 3) {
      const char* defaults[] = {"x", "y", "z"};
      names.assign(defaults, defaults + rank);
    } else {
      for (std::size_t i = 1; i <= rank; ++i) names.push_back("x" + std::to_string(i));
    }
  }
  if (names.size() != rank) throw std::invalid_argument("generator names must match the rank");
  Carrier c;
  c.alphabet_ = Alphabet(std::move(names));
  return c;
}

Carrier Carrier::surface(int genus) {
  Carrier c;
  c.surface_.emplace(genus);
  c.alphabet_ = c.surface_->alphabet();
  return c;
}

std::vector<Word> Carrier::relators() const {
  if (surface_) return {surface_->relator()};
  return {};
}

bool Carrier::is_trivial(const Word& w) const {
  return surface_ ? sfconj::is_trivial(*surface_, w) : free_reduce(w).empty();
}

Word substitute(const std::vector<Word>& images, const Word& w) {
  Word out;
  for (auto l : w) {
    if (l.generator >= images.size()) throw std::invalid_argument("substitute: letter out of range");
    out = out * (l.inverted ? images[l.generator].inverse() : images[l.generator]);
  }
  return free_reduce(out);
}

namespace {

std::vector<Word> iterate_images(const std::vector<Word>& images, std::size_t n) {
  std::vector<Word> out;
  for (std::size_t g = 0; g < images.size(); ++g) out.push_back(Word::generator(static_cast<std::uint32_t>(g)));
  for (std::size_t i = 0; i < n; ++i) {
    for (auto& w : out) w = substitute(images, w);
  }
  return out;
}

bool is_conjugation_by(const Carrier& carrier, const std::vector<Word>& images, const Word& x) {
  for (std::size_t g = 0; g < images.size(); ++g) {
    const Word gen = Word::generator(static_cast<std::uint32_t>(g));
    if (!carrier.equal(images[g], x.inverse() * gen * x)) return false;
  }
  return true;
}

}  // namespace

PresentationAutomorphism::PresentationAutomorphism(Carrier carrier, std::vector<Word> images,
                                                   std::size_t period, Word inner_witness)
    : carrier_(std::move(carrier)),
      images_(std::move(images)),
      period_(period),
      inner_witness_(free_reduce(inner_witness)) {
  if (images_.size() != carrier_.rank()) {
    throw std::invalid_argument("automorphism: one image per generator required");
  }
  if (period_ == 0) throw std::invalid_argument("automorphism: period must be positive");
  for (auto& w : images_) {
    for (auto l : w) {
      if (l.generator >= carrier_.rank()) throw std::invalid_argument("automorphism: image letter out of range");
    }
    w = free_reduce(w);
  }
  for (const auto& r : carrier_.relators()) {
    if (!carrier_.is_trivial(substitute(images_, r))) {
      throw std::invalid_argument("automorphism: relator does not map to the identity");
    }
  }
  if (!is_conjugation_by(carrier_, iterate_images(images_, period_), inner_witness_)) {
    throw std::invalid_argument("automorphism: phi^n is not conjugation by the witness");
  }
}

Word PresentationAutomorphism::apply(const Word& w) const { return substitute(images_, w); }

std::vector<Word> reduced_words_up_to(std::size_t rank, std::size_t max_length) {
  std::vector<Word> out{Word{}};
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= max_length; ++len) {
    const std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i) {
      for (std::uint32_t g = 0; g < rank; ++g) {
        for (bool inv : {false, true}) {
          const Letter l{g, inv};
          if (!out[i].empty() && cancels(out[i].back(), l)) continue;
          out.push_back(out[i] * Word{l});
        }
      }
    }
    begin = end;
  }
  return out;
}

std::optional<std::pair<std::size_t, Word>> find_virtual_period(
    const Carrier& carrier, const std::vector<Word>& images, std::size_t max_period,
    std::size_t max_witness_length) {
  const auto candidates = reduced_words_up_to(carrier.rank(), max_witness_length);
  std::vector<Word> power = iterate_images(images, 1);
  for (std::size_t n = 1; n <= max_period; ++n) {
    for (const auto& x : candidates) {
      if (is_conjugation_by(carrier, power, x)) return std::make_pair(n, x);
    }
    for (auto& w : power) w = substitute(images, w);
  }
  return std::nullopt;
}

Presentation star_extension(const PresentationAutomorphism& phi) {
  const Carrier& c = phi.carrier();
  std::string t_name = "t";
  for (int i = 1; c.alphabet().find(t_name); ++i) t_name = "t" + std::to_string(i);
  Presentation out{c.alphabet().extended(t_name), c.relators()};
  const auto t = static_cast<std::uint32_t>(c.rank());
  const Word tw = Word::generator(t);
  out.relators.push_back(free_reduce(tw.power(static_cast<long long>(phi.period())) *
                                     phi.inner_witness().inverse()));
  for (std::uint32_t g = 0; g < c.rank(); ++g) {
    out.relators.push_back(
        free_reduce(tw.inverse() * Word::generator(g) * tw * phi.images()[g].inverse()));
  }
  return out;
}

std::string to_string(const Presentation& p) {
  std::string out = "<";
  for (std::size_t i = 0; i < p.alphabet.rank(); ++i) {
    out += (i ? ", " : " ") + p.alphabet.name(static_cast<std::uint32_t>(i));
  }
  out += " |";
  for (std::size_t i = 0; i < p.relators.size(); ++i) {
    out += (i ? ", " : " ") + to_string(p.relators[i], p.alphabet);
  }
  return out + " >";
}

std::optional<Word> twisted_search(const PresentationAutomorphism& phi, const Word& g1,
                                   const Word& g2, std::size_t max_length) {
  const Carrier& c = phi.carrier();
  for (const auto& h : reduced_words_up_to(c.rank(), max_length)) {
    if (c.equal(phi.apply(h).inverse() * g1 * h, g2)) return h;
  }
  return std::nullopt;
}

}  // namespace sfconj

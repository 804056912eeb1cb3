#include "qboson/qboson.hpp"

#include <algorithm>

#include "qboson/errors.hpp"

namespace qb {

FieldElement BosonElement::coeff(const BosonKey& k) const {
  auto it = terms_.find(k);
  return it == terms_.end() ? FieldElement() : it->second;
}

void BosonElement::add_term(const BosonKey& k, const FieldElement& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

BosonElement BosonElement::operator+(const BosonElement& o) const {
  BosonElement out = *this;
  for (const auto& [k, c] : o.terms_) out.add_term(k, c);
  return out;
}

BosonElement BosonElement::operator-(const BosonElement& o) const {
  BosonElement out = *this;
  for (const auto& [k, c] : o.terms_) out.add_term(k, -c);
  return out;
}

BosonElement BosonElement::scaled(const FieldElement& c) const {
  BosonElement out;
  if (c.is_zero()) return out;
  for (const auto& [k, x] : terms_) out.add_term(k, x * c);
  return out;
}

bool TruncationIndex::operator<=(const TruncationIndex& o) const {
  if (n > o.n) return false;
  return std::includes(o.support.begin(), o.support.end(), support.begin(), support.end());
}

BosonElement BosonAlgebra::unit() {
  BosonElement x;
  x.add_term(BosonKey{Word{Side::F, {}}, Word{Side::E, {}}}, FieldElement::one(spec()));
  return x;
}

BosonElement BosonAlgebra::from_parts(const NicholsElement& r, const NicholsElement& s) {
  if (!r.is_zero() && r.side() != Side::F) throw side_mismatch("smash product puts the F part first");
  if (!s.is_zero() && s.side() != Side::E) throw side_mismatch("smash product puts the E part second");
  BosonElement out;
  for (const auto& [kr, cr] : r.terms())
    for (const auto& [ks, cs] : s.terms())
      out.add_term(BosonKey{nich_->basis_word(kr, Side::F), nich_->basis_word(ks, Side::E)},
                   cr * cs);
  return out;
}

BosonElement BosonAlgebra::generator(Side side, const GeneratorIndex& g) {
  BosonElement x;
  Word w{side, {g}};
  if (side == Side::F)
    x.add_term(BosonKey{w, Word{Side::E, {}}}, FieldElement::one(spec()));
  else
    x.add_term(BosonKey{Word{Side::F, {}}, w}, FieldElement::one(spec()));
  return x;
}

const std::vector<std::tuple<Word, Word, FieldElement>>& BosonAlgebra::straighten_words(
    const Word& s, const Word& u, StraightenStrategy strat) {
  if (s.side != Side::E || u.side != Side::F)
    throw side_mismatch("straighten expects an E-word then an F-word");
  auto& memo = strat == StraightenStrategy::PeelE ? memo_e_ : memo_f_;
  auto key = std::make_pair(s, u);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;

  const BraidingMatrix& B = nich_->braiding();
  const FieldSpec& sp = spec();
  std::vector<std::tuple<Word, Word, FieldElement>> out;
  // collect like word pairs as we go; without this the branch count blows up
  std::map<std::pair<Word, Word>, FieldElement> acc_map;
  auto add = [&](const Word& fw, const Word& ew, FieldElement c) {
    if (c.is_zero()) return;
    auto k2 = std::make_pair(fw, ew);
    auto jt = acc_map.find(k2);
    if (jt == acc_map.end())
      acc_map.emplace(std::move(k2), std::move(c));
    else
      jt->second += c;
  };
  if (s.length() == 0) {
    out.emplace_back(u, Word{Side::E, {}}, FieldElement::one(sp));
  } else if (u.length() == 0) {
    out.emplace_back(Word{Side::F, {}}, s, FieldElement::one(sp));
  } else if (strat == StraightenStrategy::PeelE) {
    // peel the last letter g of s and push it through u in one pass:
    // g u = (prod_a q_{g,a}) u g + sum_{p: u_p = g} (prod_{a<p} q_{g,a}) u\p
    GeneratorIndex g = s.letters.back();
    Word stub = s.without(s.length() - 1);
    FieldElement beta = FieldElement::one(sp);
    for (size_t p = 0; p < u.length(); ++p) {
      if (u.letters[p] == g)
        for (const auto& [fw, ew, c] : straighten_words(stub, u.without(p), strat))
          add(fw, ew, beta * c);
      beta *= B.q(g.i, u.letters[p].i);
    }
    for (const auto& [fw, ew, c] : straighten_words(stub, u, strat)) {
      Word ext = ew;
      ext.letters.push_back(g);
      add(fw, ext, beta * c);
    }
  } else {
    // peel the first letter h of u and pull all of s through it:
    // (1#s)(h u~#1) = [(1#s)(h#1)] (u~#1), resolving the inversions of h first
    GeneratorIndex h = u.letters[0];
    Word rest{Side::F, std::vector<GeneratorIndex>(u.letters.begin() + 1, u.letters.end())};
    // pass(s, h): monomials (fw, ew, c) with fw either the letter h or empty
    std::vector<std::tuple<Word, Word, FieldElement>> passed;
    {
      std::vector<std::pair<Word, FieldElement>> carry;  // s already past h
      carry.emplace_back(s, FieldElement::one(sp));
      // repeatedly peel the last letter of the tail still left of h
      std::vector<std::tuple<Word, Word, FieldElement>> acc;
      std::vector<std::tuple<Word, Word, FieldElement>> work;  // (pending tail, done suffix, c)
      work.emplace_back(s, Word{Side::E, {}}, FieldElement::one(sp));
      while (!work.empty()) {
        auto [tail, done, c] = work.back();
        work.pop_back();
        if (tail.length() == 0) {
          acc.emplace_back(Word{Side::F, {h}}, done, c);
          continue;
        }
        GeneratorIndex g = tail.letters.back();
        Word stub = tail.without(tail.length() - 1);
        Word done_ext = done;
        done_ext.letters.insert(done_ext.letters.begin(), g);
        work.emplace_back(stub, done_ext, c * B.q(g.i, h.i));
        if (g == h) {
          // annihilation: h is consumed, the remaining tail joins the suffix
          Word ew = stub;
          ew.letters.insert(ew.letters.end(), done.letters.begin(), done.letters.end());
          acc.emplace_back(Word{Side::F, {}}, ew, c);
        }
      }
      passed = std::move(acc);
    }
    for (const auto& [fw, ew, c] : passed)
      for (const auto& [fw2, ew2, c2] : straighten_words(ew, rest, strat)) {
        Word f = fw;
        f.letters.insert(f.letters.end(), fw2.letters.begin(), fw2.letters.end());
        add(f, ew2, c * c2);
      }
  }
  for (auto& [wp, c] : acc_map)
    if (!c.is_zero()) out.emplace_back(wp.first, wp.second, std::move(c));
  return memo.emplace(key, std::move(out)).first->second;
}

BosonElement BosonAlgebra::multiply(const BosonElement& a, const BosonElement& b,
                                    StraightenStrategy strat) {
  BosonElement out;
  for (const auto& [ka, ca] : a.terms())
    for (const auto& [kb, cb] : b.terms()) {
      FieldElement c0 = ca * cb;
      for (const auto& [fw, ew, c] : straighten_words(ka.e, kb.f, strat)) {
        Word fcat = ka.f;
        fcat.letters.insert(fcat.letters.end(), fw.letters.begin(), fw.letters.end());
        Word ecat = ew;
        ecat.letters.insert(ecat.letters.end(), kb.e.letters.begin(), kb.e.letters.end());
        NicholsElement fn = nich_->from_word(fcat);
        if (fn.is_zero()) continue;
        NicholsElement en = nich_->from_word(ecat);
        if (en.is_zero()) continue;
        FieldElement cc = c0 * c;
        for (const auto& [kf, cf] : fn.terms())
          for (const auto& [ke, ce] : en.terms())
            out.add_term(
                BosonKey{nich_->basis_word(kf, Side::F), nich_->basis_word(ke, Side::E)},
                cc * cf * ce);
      }
    }
  return out;
}

NicholsElement BosonAlgebra::rho_apply(const BosonElement& b, const NicholsElement& x) {
  if (!x.is_zero() && x.side() != Side::F) throw side_mismatch("the Verma module lives on the F side");
  size_t rank = datum().rank();
  NicholsElement out(Side::F);
  for (const auto& [k, c] : b.terms()) {
    std::vector<int> fdeg = k.f.multidegree(rank), edeg = k.e.multidegree(rank);
    for (const auto& [kx, cx] : x.terms()) {
      FreeElement acted = s_action(
          nich_->braiding(),
          k.e, FreeElement::from_word(nich_->basis_word(kx, Side::F), cx));
      if (acted.is_zero()) continue;
      NicholsElement term =
          nich_->multiply(nich_->from_word(k.f), nich_->normal_form(acted)).scaled(c);
      // grading: deg(result) = deg(f-part) + deg(x-term) - deg(e-part)
      for (const auto& [kt, ct] : term.terms()) {
        (void)ct;
        for (size_t i = 0; i < rank; ++i)
          if (kt.alpha[i] != kx.alpha[i] + fdeg[i] - edeg[i])
            throw internal_error("Verma action violated the degree grading");
      }
      out = out + term;
    }
  }
  return out;
}

BosonElement BosonAlgebra::truncate(const BosonElement& x, int level,
                                    const std::vector<int>& F) const {
  BosonElement out;
  for (const auto& [k, c] : x.terms()) {
    if (static_cast<int>(k.e.length()) >= level) continue;
    bool outside = false;
    for (const GeneratorIndex& g : k.e.letters)
      if (!std::binary_search(F.begin(), F.end(), g.i)) {
        outside = true;
        break;
      }
    if (outside) continue;
    out.add_term(k, c);
  }
  return out;
}

BosonElement BosonAlgebra::support_restrict(const BosonElement& x,
                                            const std::vector<int>& F) const {
  BosonElement out;
  for (const auto& [k, c] : x.terms()) {
    bool outside = false;
    for (const GeneratorIndex& g : k.f.letters)
      if (!std::binary_search(F.begin(), F.end(), g.i)) outside = true;
    for (const GeneratorIndex& g : k.e.letters)
      if (!std::binary_search(F.begin(), F.end(), g.i)) outside = true;
    if (!outside) out.add_term(k, c);
  }
  return out;
}

std::string BosonAlgebra::monomial_str(const BosonKey& k) const {
  return word_str(k.f, datum()) + " # " + word_str(k.e, datum());
}

ExtremalProjector build_projector(BosonAlgebra& B, const TruncationIndex& t) {
  ExtremalProjector p;
  p.truncation = t;
  NicholsAlgebra& nich = B.nichols();
  size_t rank = nich.datum().rank();
  for (int total = 0; total <= t.n; ++total)
    for (const auto& alpha : multidegrees_of_total(rank, total)) {
      bool within = true;
      for (size_t i = 0; i < rank; ++i)
        if (alpha[i] > 0 && !std::binary_search(t.support.begin(), t.support.end(), int(i)))
          within = false;
      if (!within) continue;
      DualBasisPair dual = nich.dual_pair(alpha);
      for (size_t q = 0; q < dual.r_basis.size(); ++q) {
        NicholsElement sr = nich.antipode(nich.normal_form(dual.r_basis[q]));
        for (const auto& [kw, kc] : sr.terms()) {
          const Word& fw = nich.basis_word(kw, Side::F);
          for (const auto& [sw, sc] : dual.s_basis[q].terms())
            p.element.add_term(BosonKey{fw, sw}, kc * sc);
        }
      }
    }
  return p;
}

namespace {

CertificateProperty check_zero(BosonAlgebra& B, const std::string& name, const BosonElement& x,
                               int level, const std::vector<int>& F) {
  CertificateProperty prop;
  prop.name = name;
  prop.modulus_level = level;
  BosonElement red = B.truncate(x, level, F);
  prop.holds = red.is_zero();
  if (!prop.holds) {
    const auto& [k, c] = *red.terms().begin();
    prop.counterexample = "(" + c.str() + ") * " + B.monomial_str(k);
  }
  return prop;
}

}  // namespace

ProjectorCertificates certify_projector(BosonAlgebra& B, const ExtremalProjector& p) {
  ProjectorCertificates certs;
  const TruncationIndex& t = p.truncation;
  const std::vector<int>& F = t.support;
  int n = t.n;
  int strict_level = std::max(n, 1);  // right-multiplication regrades; n = 0 has no content
  NicholsAlgebra& nich = B.nichols();
  const CartanDatum& d = nich.datum();

  certs.properties.push_back(check_zero(
      B, "idempotent", B.multiply(p.element, p.element) - p.element, n + 1, F));

  // one row per annihilation side, reporting the first failing generator
  auto annihilation = [&](const char* name, Side side, int level) {
    CertificateProperty prop;
    prop.name = name;
    prop.modulus_level = level;
    prop.holds = true;
    for (int i : F)
      for (long k = 1; k <= d.mult(i) && prop.holds; ++k) {
        GeneratorIndex g{i, int(k)};
        BosonElement prod = side == Side::E
                                ? B.multiply(B.generator(Side::E, g), p.element)
                                : B.multiply(p.element, B.generator(Side::F, g));
        CertificateProperty one = check_zero(B, name, prod, level, F);
        if (!one.holds) {
          prop.holds = false;
          prop.counterexample = word_str(Word{side, {g}}, d) + " gives " + one.counterexample;
        }
      }
    certs.properties.push_back(prop);
  };
  annihilation("left_annihilation", Side::E, n + 1);
  annihilation("right_annihilation", Side::F, strict_level);

  {
    BosonElement sum;
    size_t rank = d.rank();
    for (int total = 0; total < n; ++total)
      for (const auto& alpha : multidegrees_of_total(rank, total)) {
        bool within = true;
        for (size_t i = 0; i < rank; ++i)
          if (alpha[i] > 0 && !std::binary_search(F.begin(), F.end(), int(i))) within = false;
        if (!within) continue;
        DualBasisPair dual = nich.dual_pair(alpha);
        for (size_t q = 0; q < dual.r_basis.size(); ++q) {
          BosonElement rp = B.from_parts(nich.normal_form(dual.r_basis[q]),
                                         nich.unit(Side::E));
          BosonElement sp = B.from_parts(nich.unit(Side::F),
                                         nich.normal_form(dual.s_basis[q]));
          sum = sum + B.multiply(B.multiply(rp, p.element), sp);
        }
      }
    certs.properties.push_back(
        check_zero(B, "partition_of_unity", sum - B.unit(), strict_level, F));
  }

  certs.all_hold = true;
  for (const auto& prop : certs.properties) certs.all_hold = certs.all_hold && prop.holds;
  return certs;
}

}  // namespace qb

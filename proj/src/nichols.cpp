#include "qboson/nichols.hpp"

#include <algorithm>

#include "qboson/errors.hpp"

namespace qb {

FieldElement NicholsElement::coeff(const BasisKey& k) const {
  auto it = terms_.find(k);
  return it == terms_.end() ? FieldElement() : it->second;
}

void NicholsElement::add_term(const BasisKey& k, const FieldElement& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

NicholsElement NicholsElement::operator+(const NicholsElement& o) const {
  if (!is_zero() && !o.is_zero() && side_ != o.side_)
    throw side_mismatch("sum of opposite-side elements");
  NicholsElement out = *this;
  if (out.is_zero()) out.side_ = o.side_;
  for (const auto& [k, c] : o.terms_) out.add_term(k, c);
  return out;
}

NicholsElement NicholsElement::operator-(const NicholsElement& o) const {
  if (!is_zero() && !o.is_zero() && side_ != o.side_)
    throw side_mismatch("difference of opposite-side elements");
  NicholsElement out = *this;
  if (out.is_zero()) out.side_ = o.side_;
  for (const auto& [k, c] : o.terms_) out.add_term(k, -c);
  return out;
}

NicholsElement NicholsElement::scaled(const FieldElement& c) const {
  NicholsElement out(side_);
  if (c.is_zero()) return out;
  for (const auto& [k, x] : terms_) out.add_term(k, x * c);
  return out;
}

bool NicholsElement::operator==(const NicholsElement& o) const { return terms_ == o.terms_; }

size_t SpanData::basis_index(Side side, const Word& w) const {
  const std::vector<Word>& basis = side == Side::F ? basis_f : basis_e;
  auto it = std::lower_bound(basis.begin(), basis.end(), w);
  if (it == basis.end() || !(*it == w)) throw internal_error("word is not a basis word");
  return static_cast<size_t>(it - basis.begin());
}

std::vector<std::vector<int>> multidegrees_of_total(size_t rank, int total) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(rank, 0);
  auto rec = [&](auto&& self, size_t pos, int remaining) -> void {
    if (pos + 1 == rank) {
      cur[pos] = remaining;
      out.push_back(cur);
      return;
    }
    for (int v = 0; v <= remaining; ++v) {
      cur[pos] = v;
      self(self, pos + 1, remaining - v);
    }
  };
  if (rank == 0) {
    if (total == 0) out.push_back({});
    return out;
  }
  rec(rec, 0, total);
  return out;
}

NicholsAlgebra::NicholsAlgebra(const CartanDatum& d, int cap)
    : datum_(&d), braiding_(d), cap_(cap) {}

const SpanData& NicholsAlgebra::span(const std::vector<int>& alpha) {
  if (alpha.size() != datum_->rank()) throw internal_error("multidegree rank mismatch");
  for (int a : alpha)
    if (a < 0) throw internal_error("negative multidegree");
  if (total_degree(alpha) > cap_)
    throw degree_cap_error("degree " + std::to_string(total_degree(alpha)) + " exceeds cap " +
                           std::to_string(cap_));
  return span_unchecked(alpha);
}

const SpanData& NicholsAlgebra::span_unchecked(const std::vector<int>& alpha) {
  auto it = spans_.find(alpha);
  if (it != spans_.end()) return it->second;

  SpanData sd;
  sd.alpha = alpha;
  const FieldSpec& spec = datum_->field();
  if (total_degree(alpha) == 0) {
    sd.span_f = {Word{Side::F, {}}};
    sd.span_e = {Word{Side::E, {}}};
    sd.piv_f = {0};
    sd.piv_e = {0};
    sd.basis_f = sd.span_f;
    sd.basis_e = sd.span_e;
    sd.gram = Matrix(1, 1);
    sd.gram.at(0, 0) = FieldElement::one(spec);
    sd.gpiv = sd.gram;
    sd.gpiv_inv = sd.gram;
    sd.decomp_f = {{GeneratorIndex{}, 0}};
    sd.decomp_e = {{GeneratorIndex{}, 0}};
    return spans_.emplace(alpha, std::move(sd)).first->second;
  }

  // spanning words: one letter in front of each basis word one unit lower
  std::vector<std::pair<GeneratorIndex, size_t>> from_f, from_e;
  for (const GeneratorIndex& g : datum_->generators()) {
    if (alpha[g.i] == 0) continue;
    const SpanData& low = span_unchecked(add_unit(alpha, g.i, -1));
    for (size_t t = 0; t < low.basis_f.size(); ++t) {
      Word w{Side::F, {}};
      w.letters.push_back(g);
      w.letters.insert(w.letters.end(), low.basis_f[t].letters.begin(),
                       low.basis_f[t].letters.end());
      sd.span_f.push_back(std::move(w));
      from_f.emplace_back(g, t);
    }
    for (size_t t = 0; t < low.basis_e.size(); ++t) {
      Word w{Side::E, {}};
      w.letters.push_back(g);
      w.letters.insert(w.letters.end(), low.basis_e[t].letters.begin(),
                       low.basis_e[t].letters.end());
      sd.span_e.push_back(std::move(w));
      from_e.emplace_back(g, t);
    }
  }
  // canonical order
  {
    std::vector<size_t> perm(sd.span_f.size());
    for (size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    std::sort(perm.begin(), perm.end(),
              [&](size_t a, size_t b) { return sd.span_f[a] < sd.span_f[b]; });
    std::vector<Word> sf;
    std::vector<std::pair<GeneratorIndex, size_t>> ff;
    for (size_t i : perm) {
      sf.push_back(sd.span_f[i]);
      ff.push_back(from_f[i]);
    }
    sd.span_f = std::move(sf);
    from_f = std::move(ff);
  }
  {
    std::vector<size_t> perm(sd.span_e.size());
    for (size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    std::sort(perm.begin(), perm.end(),
              [&](size_t a, size_t b) { return sd.span_e[a] < sd.span_e[b]; });
    std::vector<Word> se;
    std::vector<std::pair<GeneratorIndex, size_t>> fe;
    for (size_t i : perm) {
      se.push_back(sd.span_e[i]);
      fe.push_back(from_e[i]);
    }
    sd.span_e = std::move(se);
    from_e = std::move(fe);
  }

  size_t nf = sd.span_f.size(), ne = sd.span_e.size();
  sd.gram = Matrix(nf, ne);
  for (size_t b = 0; b < ne; ++b) {
    GeneratorIndex h = from_e[b].first;
    size_t tail = from_e[b].second;
    for (size_t a = 0; a < nf; ++a) {
      const Word& u = sd.span_f[a];
      FieldElement acc = FieldElement::zero(spec);
      FieldElement suffix = FieldElement::one(spec);
      for (size_t p = u.length(); p-- > 0;) {
        if (u.letters[p] == h) {
          const std::vector<FieldElement>& low = coslab_row(u.without(p));
          if (!low[tail].is_zero()) acc += suffix * low[tail];
        }
        suffix *= braiding_.q(h.i, u.letters[p].i);
      }
      sd.gram.at(a, b) = acc;
    }
  }

  Elimination e = eliminate(sd.gram, spec);
  sd.piv_f = e.pivot_rows;
  sd.piv_e = e.pivot_cols;
  std::sort(sd.piv_f.begin(), sd.piv_f.end());
  for (size_t i : sd.piv_f) sd.basis_f.push_back(sd.span_f[i]);
  for (size_t i : sd.piv_e) sd.basis_e.push_back(sd.span_e[i]);
  size_t rk = sd.piv_f.size();
  sd.gpiv = Matrix(rk, rk);
  for (size_t p = 0; p < rk; ++p)
    for (size_t c = 0; c < rk; ++c) sd.gpiv.at(p, c) = sd.gram.at(sd.piv_f[p], sd.piv_e[c]);
  if (rk > 0) sd.gpiv_inv = inverse(sd.gpiv, spec);
  for (size_t fr : e.free_rows) {
    FreeElement v(Side::F);
    for (size_t j = 0; j < nf; ++j) v.add_term(sd.span_f[j], e.transform.at(fr, j));
    sd.kernel_f.push_back(std::move(v));
  }
  for (const auto& vec : right_nullspace(sd.gram, spec)) {
    FreeElement v(Side::E);
    for (size_t j = 0; j < ne; ++j) v.add_term(sd.span_e[j], vec[j]);
    sd.kernel_e.push_back(std::move(v));
  }
  for (size_t p = 0; p < rk; ++p) {
    const Word& w = sd.basis_f[p];
    GeneratorIndex g = w.letters[0];
    const SpanData& low = span_unchecked(add_unit(alpha, g.i, -1));
    sd.decomp_f.emplace_back(g, low.basis_index(Side::F, w.without(0)));
  }
  for (size_t c = 0; c < rk; ++c) {
    const Word& w = sd.basis_e[c];
    GeneratorIndex g = w.letters[0];
    const SpanData& low = span_unchecked(add_unit(alpha, g.i, -1));
    sd.decomp_e.emplace_back(g, low.basis_index(Side::E, w.without(0)));
  }
  return spans_.emplace(alpha, std::move(sd)).first->second;
}

const std::vector<FieldElement>& NicholsAlgebra::coslab_row(const Word& u) {
  auto it = coslab_memo_.find(u);
  if (it != coslab_memo_.end()) return it->second;
  std::vector<int> alpha = u.multidegree(datum_->rank());
  const SpanData& sd = span_unchecked(alpha);
  const FieldSpec& spec = datum_->field();
  std::vector<FieldElement> row(sd.rank(), FieldElement::zero(spec));
  if (u.length() == 0) {
    row[0] = FieldElement::one(spec);
  } else {
    for (size_t c = 0; c < sd.rank(); ++c) {
      GeneratorIndex h = sd.decomp_e[c].first;
      size_t tail = sd.decomp_e[c].second;
      FieldElement acc = FieldElement::zero(spec);
      FieldElement suffix = FieldElement::one(spec);
      for (size_t p = u.length(); p-- > 0;) {
        if (u.letters[p] == h) {
          const std::vector<FieldElement>& low = coslab_row(u.without(p));
          if (!low[tail].is_zero()) acc += suffix * low[tail];
        }
        suffix *= braiding_.q(h.i, u.letters[p].i);
      }
      row[c] = acc;
    }
  }
  return coslab_memo_.emplace(u, std::move(row)).first->second;
}

const std::vector<FieldElement>& NicholsAlgebra::slab_col(const Word& s) {
  auto it = slab_memo_.find(s);
  if (it != slab_memo_.end()) return it->second;
  std::vector<int> alpha = s.multidegree(datum_->rank());
  const SpanData& sd = span_unchecked(alpha);
  const FieldSpec& spec = datum_->field();
  std::vector<FieldElement> col(sd.rank(), FieldElement::zero(spec));
  if (s.length() == 0) {
    col[0] = FieldElement::one(spec);
  } else {
    for (size_t p = 0; p < sd.rank(); ++p) {
      GeneratorIndex g = sd.decomp_f[p].first;
      size_t tail = sd.decomp_f[p].second;
      FieldElement acc = FieldElement::zero(spec);
      FieldElement suffix = FieldElement::one(spec);
      for (size_t pos = s.length(); pos-- > 0;) {
        if (s.letters[pos] == g) {
          const std::vector<FieldElement>& low = slab_col(s.without(pos));
          if (!low[tail].is_zero()) acc += suffix * low[tail];
        }
        suffix *= braiding_.q(s.letters[pos].i, g.i);
      }
      col[p] = acc;
    }
  }
  return slab_memo_.emplace(s, std::move(col)).first->second;
}

size_t NicholsAlgebra::dim(const std::vector<int>& alpha) { return span(alpha).rank(); }

const std::vector<Word>& NicholsAlgebra::basis_words(const std::vector<int>& alpha, Side side) {
  const SpanData& sd = span(alpha);
  return side == Side::F ? sd.basis_f : sd.basis_e;
}

const Word& NicholsAlgebra::basis_word(const BasisKey& k, Side side) {
  const std::vector<Word>& basis = basis_words(k.alpha, side);
  if (k.index >= basis.size()) throw internal_error("basis index out of range");
  return basis[k.index];
}

NicholsElement NicholsAlgebra::unit(Side side) {
  NicholsElement x(side);
  x.add_term(BasisKey{std::vector<int>(datum_->rank(), 0), 0},
             FieldElement::one(datum_->field()));
  return x;
}

NicholsElement NicholsAlgebra::from_word(const Word& w) {
  auto it = nf_memo_.find(w);
  if (it != nf_memo_.end()) return it->second;
  std::vector<int> alpha = w.multidegree(datum_->rank());
  const SpanData& sd = span(alpha);
  NicholsElement out(w.side);
  size_t rk = sd.rank();
  if (rk > 0) {
    if (w.side == Side::F) {
      const std::vector<FieldElement>& row = coslab_row(w);
      for (size_t p = 0; p < rk; ++p) {
        FieldElement c;
        for (size_t cc = 0; cc < rk; ++cc) {
          if (row[cc].is_zero()) continue;
          c += row[cc] * sd.gpiv_inv.at(cc, p);
        }
        out.add_term(BasisKey{alpha, p}, c);
      }
    } else {
      const std::vector<FieldElement>& col = slab_col(w);
      for (size_t c = 0; c < rk; ++c) {
        FieldElement x;
        for (size_t p = 0; p < rk; ++p) {
          if (col[p].is_zero()) continue;
          x += sd.gpiv_inv.at(c, p) * col[p];
        }
        out.add_term(BasisKey{alpha, c}, x);
      }
    }
  }
  return nf_memo_.emplace(w, std::move(out)).first->second;
}

NicholsElement NicholsAlgebra::normal_form(const FreeElement& x) {
  NicholsElement out(x.side());
  for (const auto& [w, c] : x.terms()) out = out + from_word(w).scaled(c);
  return out;
}

FreeElement NicholsAlgebra::lift(const NicholsElement& x) {
  FreeElement out(x.side());
  for (const auto& [k, c] : x.terms()) out.add_term(basis_word(k, x.side()), c);
  return out;
}

NicholsElement NicholsAlgebra::multiply(const NicholsElement& x, const NicholsElement& y) {
  if (!x.is_zero() && !y.is_zero() && x.side() != y.side())
    throw side_mismatch("product of opposite-side elements");
  NicholsElement out(x.is_zero() ? y.side() : x.side());
  for (const auto& [kx, cx] : x.terms())
    for (const auto& [ky, cy] : y.terms()) {
      Word w = basis_word(kx, x.side());
      const Word& v = basis_word(ky, y.side());
      w.letters.insert(w.letters.end(), v.letters.begin(), v.letters.end());
      out = out + from_word(w).scaled(cx * cy);
    }
  return out;
}

std::vector<NicholsCoproductTerm> NicholsAlgebra::coproduct(const NicholsElement& x) {
  std::map<std::pair<BasisKey, BasisKey>, FieldElement> acc;
  for (const auto& [k, c] : x.terms()) {
    for (const CoproductTerm& t : braided_coproduct(braiding_, basis_word(k, x.side()))) {
      NicholsElement l = from_word(t.left), r = from_word(t.right);
      for (const auto& [kl, cl] : l.terms())
        for (const auto& [kr, cr] : r.terms()) {
          FieldElement v = c * t.coeff * cl * cr;
          auto key = std::make_pair(kl, kr);
          auto [it, inserted] = acc.emplace(key, v);
          if (!inserted) {
            it->second += v;
            if (it->second.is_zero()) acc.erase(it);
          }
        }
    }
  }
  std::vector<NicholsCoproductTerm> out;
  for (const auto& [key, c] : acc) {
    NicholsCoproductTerm t;
    t.left = NicholsElement(x.side());
    t.left.add_term(key.first, FieldElement::one(datum_->field()));
    t.right = NicholsElement(x.side());
    t.right.add_term(key.second, FieldElement::one(datum_->field()));
    t.coeff = c;
    out.push_back(std::move(t));
  }
  return out;
}

NicholsElement NicholsAlgebra::antipode_word(const Word& w) {
  auto it = antipode_memo_.find(w);
  if (it != antipode_memo_.end()) return it->second;
  NicholsElement out(w.side);
  if (w.length() == 0) {
    out = unit(w.side);
  } else {
    // m(S (x) id) Delta = unit . counit, solved for the top term
    for (const CoproductTerm& t : braided_coproduct(braiding_, w)) {
      if (t.left.length() == w.length()) continue;
      NicholsElement s_left = antipode(from_word(t.left));
      NicholsElement right = from_word(t.right);
      out = out - multiply(s_left, right).scaled(t.coeff);
    }
  }
  return antipode_memo_.emplace(w, std::move(out)).first->second;
}

NicholsElement NicholsAlgebra::antipode(const NicholsElement& x) {
  NicholsElement out(x.side());
  for (const auto& [k, c] : x.terms())
    out = out + antipode_word(basis_word(k, x.side())).scaled(c);
  return out;
}

FieldElement NicholsAlgebra::counit(const NicholsElement& x) const {
  return x.coeff(BasisKey{std::vector<int>(datum_->rank(), 0), 0});
}

std::map<std::vector<int>, size_t> NicholsAlgebra::hilbert_data(int upto) {
  std::map<std::vector<int>, size_t> out;
  for (int t = 0; t <= upto; ++t)
    for (const auto& alpha : multidegrees_of_total(datum_->rank(), t)) out[alpha] = dim(alpha);
  return out;
}

DualBasisPair NicholsAlgebra::dual_pair(const std::vector<int>& alpha) {
  const SpanData& sd = span(alpha);
  DualBasisPair pair;
  pair.alpha = alpha;
  const FieldSpec& spec = datum_->field();
  size_t rk = sd.rank();
  for (size_t p = 0; p < rk; ++p)
    pair.r_basis.push_back(FreeElement::from_word(sd.basis_f[p], FieldElement::one(spec)));
  for (size_t q = 0; q < rk; ++q) {
    FreeElement s(Side::E);
    for (size_t c = 0; c < rk; ++c) s.add_term(sd.basis_e[c], sd.gpiv_inv.at(c, q));
    pair.s_basis.push_back(std::move(s));
  }
  for (size_t p = 0; p < rk; ++p)
    for (size_t q = 0; q < rk; ++q) {
      FieldElement t = tau_free(braiding_, pair.r_basis[p], pair.s_basis[q]);
      FieldElement want = p == q ? FieldElement::one(spec) : FieldElement::zero(spec);
      if (!(t == want)) throw internal_error("dual basis certification failed");
    }
  pair.certified = true;
  return pair;
}

}  // namespace qb

#include "qboson/words.hpp"

#include <algorithm>
#include <sstream>

#include "qboson/errors.hpp"

namespace qb {

std::vector<int> Word::multidegree(size_t rank) const {
  std::vector<int> alpha(rank, 0);
  for (const auto& g : letters) alpha[g.i] += 1;
  return alpha;
}

Word Word::without(size_t pos) const {
  Word w;
  w.side = side;
  w.letters.reserve(letters.size() - 1);
  for (size_t a = 0; a < letters.size(); ++a)
    if (a != pos) w.letters.push_back(letters[a]);
  return w;
}

Word Word::subword(const std::vector<size_t>& positions) const {
  Word w;
  w.side = side;
  w.letters.reserve(positions.size());
  for (size_t p : positions) w.letters.push_back(letters[p]);
  return w;
}

bool Word::operator<(const Word& o) const {
  if (side != o.side) return side < o.side;
  if (letters.size() != o.letters.size()) return letters.size() < o.letters.size();
  return letters < o.letters;
}

std::string word_str(const Word& w, const CartanDatum& d) {
  if (w.letters.empty()) return "1";
  std::ostringstream out;
  bool first = true;
  for (const auto& g : w.letters) {
    if (!first) out << ".";
    first = false;
    out << side_name(w.side) << "[" << d.labels()[g.i] << "," << g.k << "]";
  }
  return out.str();
}

nlohmann::json word_to_json(const Word& w) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& g : w.letters) arr.push_back({g.i, g.k});
  return arr;
}

Word word_from_json(Side side, const nlohmann::json& j, const CartanDatum& d) {
  Word w;
  w.side = side;
  if (!j.is_array()) throw parse_error("word must be a JSON array");
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2) throw parse_error("word letter must be [i, k]");
    int i = e[0].get<int>();
    int k = e[1].get<int>();
    if (i < 0 || i >= static_cast<int>(d.rank()) || k < 1 || k > d.mult(i))
      throw validation_error("word letter out of range");
    w.letters.push_back({i, k});
  }
  return w;
}

FreeElement FreeElement::from_word(const Word& w, const FieldElement& c) {
  FreeElement x(w.side);
  x.add_term(w, c);
  return x;
}

FreeElement FreeElement::unit(Side side, const FieldSpec& s) {
  Word w;
  w.side = side;
  return from_word(w, FieldElement::one(s));
}

FieldElement FreeElement::coeff(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? FieldElement() : it->second;
}

void FreeElement::add_term(const Word& w, const FieldElement& c) {
  if (c.is_zero()) return;
  if (w.side != side_ && !terms_.empty()) throw side_mismatch("mixed sides in free element");
  side_ = w.side;
  auto [it, inserted] = terms_.emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

FreeElement FreeElement::operator+(const FreeElement& o) const {
  FreeElement r = *this;
  if (r.terms_.empty()) r.side_ = o.side_;
  for (const auto& [w, c] : o.terms_) r.add_term(w, c);
  return r;
}

FreeElement FreeElement::operator-(const FreeElement& o) const {
  FreeElement r = *this;
  if (r.terms_.empty()) r.side_ = o.side_;
  for (const auto& [w, c] : o.terms_) r.add_term(w, -c);
  return r;
}

FreeElement FreeElement::scaled(const FieldElement& c) const {
  FreeElement r(side_);
  if (c.is_zero()) return r;
  for (const auto& [w, x] : terms_) r.add_term(w, x * c);
  return r;
}

bool FreeElement::operator==(const FreeElement& o) const { return terms_ == o.terms_; }

FreeElement concat(const FreeElement& a, const FreeElement& b) {
  if (!a.is_zero() && !b.is_zero() && a.side() != b.side())
    throw side_mismatch("concat of opposite sides");
  FreeElement r(a.side());
  for (const auto& [wa, ca] : a.terms())
    for (const auto& [wb, cb] : b.terms()) {
      Word w = wa;
      w.letters.insert(w.letters.end(), wb.letters.begin(), wb.letters.end());
      r.add_term(w, ca * cb);
    }
  return r;
}

std::vector<CoproductTerm> braided_coproduct(const BraidingMatrix& B, const Word& w) {
  size_t n = w.length();
  std::vector<CoproductTerm> out;
  out.reserve(size_t(1) << n);
  bool fside = w.side == Side::F;
  const FieldSpec& spec = B.spec();
  for (size_t mask = 0; mask < (size_t(1) << n); ++mask) {
    FieldElement beta = FieldElement::one(spec);
    std::vector<size_t> in, outp;
    for (size_t a = 0; a < n; ++a) {
      if (mask & (size_t(1) << a)) {
        in.push_back(a);
      } else {
        outp.push_back(a);
      }
    }
    // beta(A) collects one braiding scalar per pair a < b with a outside A and
    // b inside A (letter b moves left past letter a).
    for (size_t a : outp)
      for (size_t b : in) {
        if (a >= b) continue;
        int ia = w.letters[a].i, ib = w.letters[b].i;
        beta *= fside ? B.q(ia, ib) : B.q_inv(ia, ib);
      }
    out.push_back({w.subword(in), w.subword(outp), beta});
  }
  return out;
}

FreeElement e_derivation(const BraidingMatrix& B, const GeneratorIndex& g, const FreeElement& r) {
  if (!r.is_zero() && r.side() != Side::F) throw side_mismatch("e_derivation acts on F-side elements");
  FreeElement out(Side::F);
  for (const auto& [w, c] : r.terms()) {
    FieldElement weight = c;
    for (size_t p = 0; p < w.letters.size(); ++p) {
      const GeneratorIndex& l = w.letters[p];
      if (l.i == g.i && l.k == g.k) out.add_term(w.without(p), weight);
      weight *= B.q(g.i, l.i);
    }
  }
  return out;
}

FreeElement s_action(const BraidingMatrix& B, const Word& s, const FreeElement& r) {
  if (s.side != Side::E) throw side_mismatch("s_action expects an E-side word");
  FreeElement cur = r;
  for (auto it = s.letters.rbegin(); it != s.letters.rend(); ++it) cur = e_derivation(B, *it, cur);
  return cur;
}

namespace {

void enumerate_words_rec(const CartanDatum& d, Side side, std::vector<int>& remaining, Word& cur,
                         std::vector<Word>& out) {
  bool done = true;
  for (int x : remaining)
    if (x > 0) done = false;
  if (done) {
    out.push_back(cur);
    return;
  }
  for (int i = 0; i < static_cast<int>(d.rank()); ++i) {
    if (remaining[i] == 0) continue;
    remaining[i]--;
    for (int k = 1; k <= d.mult(i); ++k) {
      cur.letters.push_back({i, k});
      enumerate_words_rec(d, side, remaining, cur, out);
      cur.letters.pop_back();
    }
    remaining[i]++;
  }
}

}  // namespace

std::vector<Word> words_of_multidegree(const CartanDatum& d, Side side, const std::vector<int>& alpha) {
  if (alpha.size() != d.rank()) throw internal_error("multidegree rank mismatch");
  std::vector<int> remaining = alpha;
  Word cur;
  cur.side = side;
  std::vector<Word> out;
  enumerate_words_rec(d, side, remaining, cur, out);
  return out;
}

std::vector<int> add_unit(const std::vector<int>& alpha, int i, int delta) {
  std::vector<int> r = alpha;
  r[i] += delta;
  return r;
}

int total_degree(const std::vector<int>& alpha) {
  int t = 0;
  for (int x : alpha) t += x;
  return t;
}

bool support_within(const std::vector<int>& alpha, const std::vector<int>& F) {
  for (size_t i = 0; i < alpha.size(); ++i) {
    if (alpha[i] == 0) continue;
    if (!std::binary_search(F.begin(), F.end(), static_cast<int>(i))) return false;
  }
  return true;
}

}  // namespace qb

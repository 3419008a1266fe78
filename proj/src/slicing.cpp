#include "smove/slicing.hpp"

#include <algorithm>
#include <sstream>

#include "smove/error.hpp"

namespace smove {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void need_index(const SliceGraph& s, std::size_t c) {
  if (c >= s.components.size()) {
    throw InputError("component " + std::to_string(c) + " does not exist");
  }
}

Circle& circle_at(SliceGraph& s, std::size_t c) {
  need_index(s, c);
  auto* p = std::get_if<Circle>(&s.components[c]);
  if (!p) throw InputError("component " + std::to_string(c) + " is not a circle");
  return *p;
}

Arc& arc_at(SliceGraph& s, std::size_t c) {
  need_index(s, c);
  auto* p = std::get_if<Arc>(&s.components[c]);
  if (!p) throw InputError("component " + std::to_string(c) + " is not an arc");
  return *p;
}

void erase(SliceGraph& s, std::size_t c) {
  s.components.erase(s.components.begin() + static_cast<std::ptrdiff_t>(c));
}

bool ends_inverse(const std::string& channel) {
  return channel.size() >= 3 && channel.compare(channel.size() - 3, 3, "^-1") == 0;
}

std::string join(const std::vector<std::string>& v, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
  return out;
}

// Records moves while replaying them, so every builder output is valid by
// construction (and validate() re-checks it anyway).
class Builder {
 public:
  Builder() { seq_.slices.push_back({}); }

  void step(LocalMove m) {
    SliceGraph next = apply_local_move(seq_.slices.back(), m);
    seq_.moves.push_back(std::move(m));
    seq_.slices.push_back(std::move(next));
  }

  void circulate(std::size_t c, const std::string& channel, const Word& letters) {
    for (auto l : letters) step(CirculateStep{c, channel, l});
  }

  SliceSequence finish(std::vector<BoundaryPart> boundary) {
    seq_.boundary = std::move(boundary);
    return std::move(seq_);
  }

 private:
  SliceSequence seq_;
};

}  // namespace

SliceGraph apply_local_move(const SliceGraph& s, const LocalMove& m) {
  SliceGraph out = s;
  out.level = s.level + 1;
  std::visit(
      overloaded{
          [&](const BirthCircle& v) { out.components.push_back(Circle{v.marks}); },
          [&](const DeathCircle& v) {
            circle_at(out, v.c);
            erase(out, v.c);
          },
          [&](const SplitCircleToArc& v) {
            circle_at(out, v.c);
            out.components[v.c] = Arc{v.left, v.right, {}};
          },
          [&](const JoinArcsToCircle& v) {
            arc_at(out, v.c1);
            arc_at(out, v.c2);
            out.components[v.c1] = Circle{{v.mark}};
            if (v.c2 != v.c1) erase(out, v.c2);
          },
          [&](const CirculateStep& v) { arc_at(out, v.c).trace.push_back(v.letter); },
          [&](const MergeArcs& v) {
            if (v.c1 == v.c2) throw InputError("MergeArcs needs two distinct arcs");
            const Arc b = arc_at(out, v.c2);
            Arc& a = arc_at(out, v.c1);
            a.right = b.right;
            a.trace.append(b.trace);
            erase(out, v.c2);
          },
          [&](const IdentifyEdges& v) {
            std::size_t hits = 0;
            auto rename = [&](std::string& label) {
              if (label == v.drop) {
                label = v.keep;
                ++hits;
              }
            };
            for (auto& c : out.components) {
              std::visit(overloaded{[&](Circle& x) { std::for_each(x.marks.begin(), x.marks.end(), rename); },
                                    [&](Arc& x) {
                                      rename(x.left);
                                      rename(x.right);
                                    }},
                         c);
            }
            if (hits == 0) throw InputError("label " + v.drop + " does not occur");
          },
          [&](const SwapEnds& v) {
            Arc& a = arc_at(out, v.c);
            std::swap(a.left, a.right);
          },
          [&](const SaddlePair& v) { need_index(out, v.c); },
          [&](const JoinCircles& v) {
            if (v.into == v.from) throw InputError("JoinCircles needs two distinct circles");
            const Circle from = circle_at(out, v.from);
            Circle& into = circle_at(out, v.into);
            into.marks.insert(into.marks.end(), from.marks.begin(), from.marks.end());
            erase(out, v.from);
          },
          [&](const SplitCircle& v) {
            Circle& c = circle_at(out, v.c);
            for (const auto& mark : v.marks) {
              auto it = std::find(c.marks.begin(), c.marks.end(), mark);
              if (it == c.marks.end()) throw InputError("mark " + mark + " not on circle");
              c.marks.erase(it);
            }
            out.components.push_back(Circle{v.marks});
          },
      },
      m);
  return out;
}

ValidationResult validate(const SliceSequence& seq) {
  if (seq.slices.empty() || seq.moves.size() + 1 != seq.slices.size()) {
    return {false, 0, "need exactly one move between consecutive slices"};
  }
  for (std::size_t k = 0; k < seq.moves.size(); ++k) {
    try {
      if (apply_local_move(seq.slices[k], seq.moves[k]) != seq.slices[k + 1]) {
        return {false, k, "move does not reproduce the next slice"};
      }
    } catch (const InputError& e) {
      return {false, k, e.what()};
    }
  }
  return {};
}

ReducedWord channel_word(const SliceSequence& seq, const std::string& channel) {
  Word w;
  for (const auto& m : seq.moves) {
    if (const auto* c = std::get_if<CirculateStep>(&m); c && c->channel == channel) {
      w.push_back(c->letter);
    }
  }
  if (ends_inverse(channel)) {
    std::vector<Letter> letters(w.begin(), w.end());
    std::reverse(letters.begin(), letters.end());
    w = Word(std::move(letters));
  }
  return reduce(w);
}

ReducedWord boundary_trace(const SliceSequence& seq) {
  if (const auto v = validate(seq); !v) {
    throw PreconditionError("boundary_trace of an invalid sequence (move " +
                            std::to_string(v.first_bad_index) + ": " + v.reason + ")");
  }
  Word all;
  for (const auto& part : seq.boundary) {
    const auto w = channel_word(seq, part.channel);
    all.append(part.inverse ? invert(w) : w);
  }
  return reduce(all);
}

ReducedWord inverse_trace(const Word& R) { return reduce(flip_signs(R)); }

SliceSequence slice_bag(const Word& W, bool identify) {
  Builder b;
  b.step(BirthCircle{{"P1"}});
  b.step(BirthCircle{{"P2"}});
  b.step(SplitCircleToArc{0, "W^-1", "W"});
  b.step(SplitCircleToArc{1, "w^-1", "w"});
  if (identify) {
    b.step(IdentifyEdges{"W", "W^-1"});
    b.step(IdentifyEdges{"w", "w^-1"});
  }
  b.circulate(0, "W", W);
  b.step(JoinArcsToCircle{0, 1, "Q"});
  b.step(DeathCircle{0});
  return b.finish({{"W", false}, {"W", true}});
}

SliceSequence slice_inverse_pair(const Word& R) {
  Builder b;
  b.step(BirthCircle{{"P1"}});
  b.step(BirthCircle{{"P2"}});
  b.step(SplitCircleToArc{0, "R", "r"});
  b.step(SplitCircleToArc{1, "R^-1", "r^-1"});
  b.step(IdentifyEdges{"r", "r^-1"});
  // The R^-1 arc winds the opposite way around each generator.
  for (auto l : R) {
    b.step(CirculateStep{0, "R", l});
    b.step(CirculateStep{1, "R^-1", l.inverse()});
  }
  b.step(JoinArcsToCircle{0, 0, "Q"});
  b.step(JoinArcsToCircle{1, 1, "Q"});
  b.step(DeathCircle{1});
  b.step(DeathCircle{0});
  return b.finish({{"R", false}, {"R^-1", false}});
}

SliceSequence slice_commutator(const Word& R, const Word& S, Dominant dominant, bool identify) {
  Builder b;
  b.step(BirthCircle{{"P1"}});
  b.step(BirthCircle{{"P2"}});
  b.step(BirthCircle{{"P3"}});
  b.step(BirthCircle{{"P4"}});
  b.step(SplitCircleToArc{0, "S^-1", "R"});
  b.step(SplitCircleToArc{1, "r", "S"});
  b.step(SplitCircleToArc{2, "s", "r^-1"});
  b.step(SplitCircleToArc{3, "R^-1", "s^-1"});
  if (identify) {
    b.step(IdentifyEdges{"r", "r^-1"});
    b.step(IdentifyEdges{"s", "s^-1"});
    b.step(IdentifyEdges{"R", "R^-1"});
    b.step(IdentifyEdges{"S", "S^-1"});
    b.step(SwapEnds{3});
  }
  const Word Rinv = flip_signs(R);
  const Word Sinv = flip_signs(S);
  if (dominant == Dominant::RFirst) {
    b.circulate(0, "R", R);
    b.circulate(3, "R^-1", Rinv);
    b.step(MergeArcs{0, 3, "M"});
    b.circulate(1, "S", S);
    b.circulate(2, "S^-1", Sinv);
    b.step(MergeArcs{1, 2, "Q"});
  } else {
    b.circulate(1, "S", S);
    b.circulate(2, "S^-1", Sinv);
    b.step(MergeArcs{1, 2, "M"});
    // arcs now: 0 (R side), 1 (merged S), 2 (R^-1 side)
    b.circulate(0, "R", R);
    b.circulate(2, "R^-1", Rinv);
    b.step(MergeArcs{0, 2, "Q"});
  }
  b.step(JoinArcsToCircle{0, 1, "Q"});
  b.step(DeathCircle{0});
  if (dominant == Dominant::RFirst) {
    return b.finish({{"R", false}, {"S", false}, {"R^-1", false}, {"S^-1", false}});
  }
  return b.finish({{"S", false}, {"R^-1", false}, {"S^-1", false}, {"R", false}});
}

SliceSequence slice_product(const Word& R, const Word& S) {
  Builder b;
  b.step(BirthCircle{{"P1"}});
  b.step(BirthCircle{{"P2"}});
  b.step(SplitCircleToArc{0, "A1", "R"});
  b.step(SplitCircleToArc{1, "S^-1", "A2"});
  b.circulate(0, "R", R);
  b.step(MergeArcs{0, 1, "M"});
  b.circulate(0, "S^-1", flip_signs(S));
  b.step(JoinArcsToCircle{0, 0, "Q"});
  b.step(DeathCircle{0});
  return b.finish({{"R", false}, {"S^-1", false}});
}

namespace {

std::size_t shift(std::size_t c) { return c + 1; }

LocalMove shifted(const LocalMove& m, const std::string& prefix) {
  return std::visit(
      overloaded{
          [](const BirthCircle& v) -> LocalMove { return v; },
          [](const DeathCircle& v) -> LocalMove { return DeathCircle{shift(v.c)}; },
          [](const SplitCircleToArc& v) -> LocalMove {
            return SplitCircleToArc{shift(v.c), v.left, v.right};
          },
          [](const JoinArcsToCircle& v) -> LocalMove {
            return JoinArcsToCircle{shift(v.c1), shift(v.c2), v.mark};
          },
          [&](const CirculateStep& v) -> LocalMove {
            return CirculateStep{shift(v.c), prefix + v.channel, v.letter};
          },
          [](const MergeArcs& v) -> LocalMove { return MergeArcs{shift(v.c1), shift(v.c2), v.mark}; },
          [](const IdentifyEdges& v) -> LocalMove { return v; },
          [](const SwapEnds& v) -> LocalMove { return SwapEnds{shift(v.c)}; },
          [](const SaddlePair& v) -> LocalMove { return SaddlePair{shift(v.c)}; },
          [](const JoinCircles& v) -> LocalMove { return JoinCircles{shift(v.into), shift(v.from)}; },
          [](const SplitCircle& v) -> LocalMove { return SplitCircle{shift(v.c), v.marks}; },
      },
      m);
}

}  // namespace

SliceSequence connect(const std::vector<SliceSequence>& pieces) {
  if (pieces.empty()) throw InputError("connect needs at least one piece");
  for (const auto& p : pieces) {
    if (auto v = validate(p); !v) throw InputError("connect: piece does not validate: " + v.reason);
  }
  Builder b;
  b.step(BirthCircle{{"root"}});
  std::vector<BoundaryPart> boundary;
  if (pieces.size() == 1) {
    for (const auto& m : pieces[0].moves) b.step(shifted(m, ""));
    b.step(DeathCircle{0});
    return b.finish(pieces[0].boundary);
  }
  // Each piece enters at its own local minimum, is joined into the root cell
  // without its final deaths, and is split off again after all pieces are in.
  std::vector<std::vector<std::vector<std::string>>> entered(pieces.size());
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const auto& p = pieces[i];
    const std::string prefix = "p" + std::to_string(i + 1) + ":";
    std::size_t keep = p.moves.size();
    while (keep > 0 && std::holds_alternative<DeathCircle>(p.moves[keep - 1])) --keep;
    for (std::size_t k = 0; k < keep; ++k) b.step(shifted(p.moves[k], prefix));
    const auto& left = p.slices[keep].components;
    for (std::size_t j = 0; j < left.size(); ++j) {
      const auto* c = std::get_if<Circle>(&left[j]);
      if (!c) throw InputError("connect: piece leaves an open arc before its maxima");
      entered[i].push_back(c->marks);
      b.step(JoinCircles{0, 1});
    }
    for (const auto& part : p.boundary) boundary.push_back({prefix + part.channel, part.inverse});
  }
  for (const auto& marks_list : entered) {
    for (const auto& marks : marks_list) {
      b.step(SplitCircle{0, marks});
      b.step(DeathCircle{1});
    }
  }
  b.step(DeathCircle{0});
  return b.finish(boundary);
}

std::string format_component(const Component& c) {
  return std::visit(overloaded{[](const Circle& x) { return "C[" + join(x.marks, ",") + "]"; },
                               [](const Arc& x) {
                                 return "A[" + x.left + "," + x.right +
                                        ";trace=" + format_word(x.trace) + "]";
                               }},
                    c);
}

std::string format_slice(const SliceGraph& s) {
  std::string out = "slice " + std::to_string(s.level) + ":";
  for (const auto& c : s.components) out += " " + format_component(c);
  return out;
}

std::string format_local_move(const LocalMove& m) {
  using std::to_string;
  return std::visit(
      overloaded{
          [](const BirthCircle& v) { return "BirthCircle " + join(v.marks, ","); },
          [](const DeathCircle& v) { return "DeathCircle " + to_string(v.c); },
          [](const SplitCircleToArc& v) {
            return "SplitCircleToArc " + to_string(v.c) + " " + v.left + " " + v.right;
          },
          [](const JoinArcsToCircle& v) {
            return "JoinArcsToCircle " + to_string(v.c1) + " " + to_string(v.c2) + " " + v.mark;
          },
          [](const CirculateStep& v) {
            return "CirculateStep " + to_string(v.c) + " " + v.channel + " " + format_letter(v.letter);
          },
          [](const MergeArcs& v) {
            return "MergeArcs " + to_string(v.c1) + " " + to_string(v.c2) + " " + v.mark;
          },
          [](const IdentifyEdges& v) { return "IdentifyEdges " + v.keep + " " + v.drop; },
          [](const SwapEnds& v) { return "SwapEnds " + to_string(v.c); },
          [](const SaddlePair& v) { return "SaddlePair " + to_string(v.c); },
          [](const JoinCircles& v) { return "JoinCircles " + to_string(v.into) + " " + to_string(v.from); },
          [](const SplitCircle& v) { return "SplitCircle " + to_string(v.c) + " " + join(v.marks, ","); },
      },
      m);
}

std::string dump(const SliceSequence& seq) {
  std::ostringstream out;
  for (std::size_t k = 0; k < seq.slices.size(); ++k) {
    out << format_slice(seq.slices[k]) << "\n";
    if (k < seq.moves.size()) out << "-- " << format_local_move(seq.moves[k]) << "\n";
  }
  return out.str();
}

// ---- Abstract slices -------------------------------------------------------

namespace {

const char* kind_prefix(TokenKind k) {
  switch (k) {
    case TokenKind::Empty: return "empty";
    case TokenKind::Sphere: return "sphere";
    case TokenKind::SpElBag: return "bag";
    case TokenKind::SpElInvPair: return "invpair";
    case TokenKind::Cell: return "cell";
    case TokenKind::Commutator: return "comm";
  }
  return "";
}

bool has_word(TokenKind k) { return k != TokenKind::Empty && k != TokenKind::Sphere; }

}  // namespace

std::string CellToken::label() const {
  if (!has_word(kind)) return kind_prefix(kind);
  return std::string(kind_prefix(kind)) + ":" + format_word(word);
}

CellToken CellToken::formal_inverse() const {
  if (!has_word(kind)) return *this;
  return {kind, invert(word)};
}

CellToken empty_token() { return {TokenKind::Empty, {}}; }
CellToken sphere_token() { return {TokenKind::Sphere, {}}; }
CellToken cell_token(const Word& w) { return {TokenKind::Cell, reduce(w)}; }
CellToken bag_token(const Word& w) { return {TokenKind::SpElBag, reduce(w)}; }
CellToken invpair_token(const Word& w) { return {TokenKind::SpElInvPair, reduce(w)}; }
CellToken commutator_token(const Word& w) { return {TokenKind::Commutator, reduce(w)}; }

std::string inverse_label(const std::string& label) {
  if (label == "empty" || label == "sphere") return label;
  const auto colon = label.find(':');
  if (colon == std::string::npos) throw InputError("bad token label '" + label + "'");
  const std::string kind = label.substr(0, colon);
  if (kind != "bag" && kind != "invpair" && kind != "cell" && kind != "comm") {
    throw InputError("bad token label '" + label + "'");
  }
  return kind + ":" + format_word(invert(parse_word(label.substr(colon + 1))));
}

std::string canonical_label(const std::string& label) {
  return std::min(label, inverse_label(label));
}

bool is_spel_label(const std::string& label) {
  return label.rfind("bag:", 0) == 0 || label.rfind("invpair:", 0) == 0;
}

bool AbstractSlice::is_empty() const {
  return tokens.size() == 1 && tokens[0].kind == TokenKind::Empty;
}

std::vector<std::string> AbstractSlice::labels() const {
  std::vector<std::string> out;
  for (const auto& t : tokens) out.push_back(t.label());
  std::sort(out.begin(), out.end());
  return out;
}

IdentificationType other_type(IdentificationType t) {
  return t == IdentificationType::Longitudinal ? IdentificationType::Meridian
                                               : IdentificationType::Longitudinal;
}

std::string type_name(IdentificationType t) {
  return t == IdentificationType::Longitudinal ? "long" : "mer";
}

std::vector<CellToken> spel_tokens(const CriterionInstance& inst, std::size_t alpha,
                                   IdentificationType type) {
  const auto& f = inst.decomp.at(alpha);
  const ReducedWord r = expand(f.r, inst.K);
  const ReducedWord s = expand(f.s, inst.L);
  // Longitudinal: the R-side cells are glued inverse pairs and the S-side
  // cells are bags. The S-side token is read against the orientation of S^-1.
  if (type == IdentificationType::Longitudinal) return {invpair_token(r), bag_token(invert(s))};
  return {bag_token(r), invpair_token(invert(s))};
}

AbstractSliceSequence build_abstract(const CriterionInstance& inst, IdentificationType type,
                                     std::optional<Residual> residual) {
  check_instance(inst);
  if (!verify(inst)) throw PreconditionError("abstract sequence needs an instance that verifies");
  const ReducedWord R = word_R(inst);
  const ReducedWord S = word_S(inst);
  const ReducedWord RS = product_word(inst);

  std::vector<CellToken> spel;
  std::vector<CellToken> comms;
  for (std::size_t a = 0; a < inst.decomp.size(); ++a) {
    for (auto& t : spel_tokens(inst, a, type)) spel.push_back(t);
    const auto& f = inst.decomp[a];
    comms.push_back(commutator_token(commutator(expand(f.s, inst.L), expand(f.r, inst.K))));
  }

  AbstractSliceSequence seq;
  seq.type = type;
  seq.residual = residual;
  auto add = [&](std::vector<CellToken> tokens) { seq.slices.push_back({std::move(tokens)}); };

  add({empty_token()});
  add({sphere_token(), sphere_token()});
  std::vector<CellToken> s2;
  if (!residual) {
    s2 = {cell_token(R), cell_token(invert(S))};
  } else if (residual->side == Side::K) {
    s2 = {cell_token(residual->new_word), cell_token(residual->residual), cell_token(invert(S))};
  } else {
    s2 = {cell_token(R), cell_token(invert(residual->new_word)), cell_token(residual->residual)};
  }
  s2.insert(s2.end(), spel.begin(), spel.end());
  add(s2);
  std::vector<CellToken> s3{cell_token(RS)};
  s3.insert(s3.end(), spel.begin(), spel.end());
  add(s3);
  std::vector<CellToken> s4{cell_token(RS)};
  s4.insert(s4.end(), comms.begin(), comms.end());
  add(s4);
  add({cell_token(Word{})});
  add({sphere_token(), sphere_token()});
  add({empty_token()});

  seq.transitions = {TransitionKind::Split, TransitionKind::Split,     TransitionKind::Join,
                     TransitionKind::Transform, TransitionKind::Join,  TransitionKind::Split,
                     TransitionKind::Join};
  seq.perturbation_index = 3;
  return seq;
}

std::string dump(const AbstractSliceSequence& seq) {
  static const char* names[] = {"Join", "Split", "Transform"};
  std::ostringstream out;
  out << "type " << type_name(seq.type) << "\n";
  for (std::size_t k = 0; k < seq.slices.size(); ++k) {
    out << "slice " << k << ":";
    for (const auto& t : seq.slices[k].tokens) out << " " << t.label();
    out << "\n";
    if (k < seq.transitions.size()) {
      out << "-- " << names[static_cast<int>(seq.transitions[k])];
      if (k == seq.perturbation_index) out << " (perturbed)";
      out << "\n";
    }
  }
  return out.str();
}

}  // namespace smove

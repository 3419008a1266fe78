#include "smove/presentation.hpp"

#include <fstream>
#include <set>
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

std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

std::string_view strip_comment(std::string_view line) {
  const auto hash = line.find('#');
  return hash == std::string_view::npos ? line : line.substr(0, hash);
}

Letter parse_single_letter(const std::string& tok) {
  const Word w = parse_word(tok);
  if (w.size() != 1) throw InputError("expected a single generator letter, got '" + tok + "'");
  return w[0];
}

int parse_generator(const std::string& tok) {
  const Letter l = parse_single_letter(tok);
  if (l.sign() < 0) throw InputError("expected a positive generator, got '" + tok + "'");
  return l.index();
}

}  // namespace

Presentation::Presentation(int generator_count, std::vector<Relator> relators)
    : generator_count_(generator_count), relators_(std::move(relators)) {
  if (generator_count_ < 1) throw InputError("presentation needs at least one generator");
  std::set<std::string> names;
  for (const auto& r : relators_) {
    if (r.name.empty()) throw InputError("relator with empty name");
    if (!names.insert(r.name).second) throw InputError("duplicate relator name '" + r.name + "'");
    check_generators(r.word, generator_count_);
  }
}

const Relator& Presentation::at(std::size_t i) const {
  if (i >= relators_.size()) {
    throw InputError("relator index " + std::to_string(i) + " out of range (" +
                     std::to_string(relators_.size()) + " relators)");
  }
  return relators_[i];
}

std::optional<std::size_t> Presentation::find(std::string_view name) const {
  for (std::size_t i = 0; i < relators_.size(); ++i) {
    if (relators_[i].name == name) return i;
  }
  return std::nullopt;
}

std::size_t Presentation::index_of(std::string_view name) const {
  auto i = find(name);
  if (!i) throw InputError("unknown relator '" + std::string(name) + "'");
  return *i;
}

const ReducedWord& Presentation::word(std::string_view name) const {
  return relators_[index_of(name)].word;
}

Presentation Presentation::with_word(std::size_t i, const Word& word) const {
  at(i);
  auto rels = relators_;
  rels[i].word = reduce(word);
  return Presentation(generator_count_, std::move(rels));
}

ReducedWord expand(const ConjugatedRelator& c, const Presentation& p) {
  const auto& base = p.word(c.base);
  return conjugate(c.conjugator, c.exponent < 0 ? Word(invert(base)) : Word(base));
}

// ---- Q-moves ---------------------------------------------------------------

std::size_t target_of(const QMove& m) {
  return std::visit([](const auto& v) { return v.target; }, m);
}

void check_qmove(const Presentation& p, const QMove& m) {
  std::visit(overloaded{
                 [&](const InvertRelator& v) { p.at(v.target); },
                 [&](const MultiplyRight& v) {
                   p.at(v.target);
                   p.at(v.other);
                   if (v.target == v.other) {
                     throw InputError("MultiplyRight needs two distinct relators");
                   }
                 },
                 [&](const ConjugateRelator& v) {
                   p.at(v.target);
                   check_generators(Word{v.by}, p.generator_count());
                 },
             },
             m);
}

Presentation apply_qmove(const Presentation& p, const QMove& m) {
  check_qmove(p, m);
  return std::visit(
      overloaded{
          [&](const InvertRelator& v) { return p.with_word(v.target, invert(p.at(v.target).word)); },
          [&](const MultiplyRight& v) {
            return p.with_word(v.target, multiply(p.at(v.target).word, p.at(v.other).word));
          },
          [&](const ConjugateRelator& v) {
            return p.with_word(v.target, conjugate(Word{v.by}, p.at(v.target).word));
          },
      },
      m);
}

std::vector<QMove> inverse_moves(const Presentation& p, const QMove& m) {
  check_qmove(p, m);
  return std::visit(overloaded{
                        [](const InvertRelator& v) { return std::vector<QMove>{v}; },
                        [](const MultiplyRight& v) {
                          // R_t R_o  ->  R_t R_o R_o^-1 via a temporary inversion of R_o.
                          return std::vector<QMove>{InvertRelator{v.other}, v,
                                                    InvertRelator{v.other}};
                        },
                        [](const ConjugateRelator& v) {
                          return std::vector<QMove>{ConjugateRelator{v.target, v.by.inverse()}};
                        },
                    },
                    m);
}

std::vector<ConjugatedRelator> normal_closure_witness(const Presentation& p, const QMove& m) {
  check_qmove(p, m);
  return std::visit(
      overloaded{
          [&](const InvertRelator& v) {
            return std::vector<ConjugatedRelator>{{ReducedWord{}, p.at(v.target).name, -1}};
          },
          [&](const MultiplyRight& v) {
            return std::vector<ConjugatedRelator>{{ReducedWord{}, p.at(v.target).name, 1},
                                                  {ReducedWord{}, p.at(v.other).name, 1}};
          },
          [&](const ConjugateRelator& v) {
            return std::vector<ConjugatedRelator>{{reduce(Word{v.by}), p.at(v.target).name, 1}};
          },
      },
      m);
}

std::string describe(const QMove& m, const Presentation& p) {
  return std::visit(overloaded{
                        [&](const InvertRelator& v) { return "inv " + p.at(v.target).name; },
                        [&](const MultiplyRight& v) {
                          return "mulr " + p.at(v.target).name + " " + p.at(v.other).name;
                        },
                        [&](const ConjugateRelator& v) {
                          return "conj " + p.at(v.target).name + " " + format_letter(v.by);
                        },
                    },
                    m);
}

// ---- Nielsen moves ---------------------------------------------------------

void check_nielsen(int generator_count, const NielsenMove& m) {
  if (m.target < 1 || m.target > generator_count) {
    throw InputError("Nielsen target generator " + std::to_string(m.target) + " out of range");
  }
  if (m.kind != NielsenKind::Invert) {
    if (m.other < 1 || m.other > generator_count) {
      throw InputError("Nielsen partner generator " + std::to_string(m.other) + " out of range");
    }
    if (m.other == m.target) throw InputError("Nielsen multiplication needs distinct generators");
  }
}

ReducedWord nielsen_image(const NielsenMove& m) {
  const Letter a(m.target, 1);
  switch (m.kind) {
    case NielsenKind::Invert:
      return reduce(Word{a.inverse()});
    case NielsenKind::RightMultiply:
      return reduce(Word{a, Letter(m.other, 1)});
    case NielsenKind::LeftMultiply:
      return reduce(Word{Letter(m.other, 1), a});
  }
  return {};
}

ReducedWord apply_nielsen(const Word& w, const NielsenMove& m) {
  return substitute(w, m.target, nielsen_image(m));
}

Presentation apply_nielsen(const Presentation& p, const NielsenMove& m) {
  check_nielsen(p.generator_count(), m);
  auto rels = p.relators();
  for (auto& r : rels) r.word = apply_nielsen(r.word, m);
  return Presentation(p.generator_count(), std::move(rels));
}

std::pair<Presentation, Presentation> apply_nielsen_pair(const Presentation& k,
                                                         const Presentation& l,
                                                         const NielsenMove& m) {
  if (k.generator_count() != l.generator_count()) {
    throw InputError("Nielsen pair needs presentations over the same generators");
  }
  return {apply_nielsen(k, m), apply_nielsen(l, m)};
}

std::vector<NielsenMove> inverse_moves(const NielsenMove& m) {
  if (m.kind == NielsenKind::Invert) return {m};
  // a -> a b is undone by a -> a b^-1, written with moves from the same basis.
  const NielsenMove flip{m.other, NielsenKind::Invert, 0};
  return {flip, m, flip};
}

Presentation prolong(const Presentation& p) {
  const int n = p.generator_count() + 1;
  auto rels = p.relators();
  rels.push_back({"T" + std::to_string(n), reduce(Word{Letter(n, 1)})});
  return Presentation(n, std::move(rels));
}

// ---- Text formats ----------------------------------------------------------

Presentation parse_presentation(std::string_view text) {
  std::optional<int> gens;
  std::vector<Relator> rels;
  std::istringstream in{std::string(text)};
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const auto toks = split_ws(strip_comment(raw));
    if (toks.empty()) continue;
    const std::string where = " (line " + std::to_string(lineno) + ")";
    if (!gens) {
      if (toks.size() != 2 || toks[0] != "gens") {
        throw InputError("presentation must start with 'gens <n>'" + where);
      }
      try {
        gens = std::stoi(toks[1]);
      } catch (const std::exception&) {
        throw InputError("bad generator count '" + toks[1] + "'" + where);
      }
      continue;
    }
    if (toks[0] != "rel" || toks.size() < 3) {
      throw InputError("expected 'rel <name> <word>'" + where);
    }
    std::string literal;
    for (std::size_t i = 2; i < toks.size(); ++i) literal += toks[i];
    rels.push_back({toks[1], parse_reduced(literal, *gens)});
  }
  if (!gens) throw InputError("presentation is missing 'gens <n>'");
  return Presentation(*gens, std::move(rels));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Presentation load_presentation(const std::string& path) {
  return parse_presentation(read_file(path));
}

std::string format_presentation(const Presentation& p) {
  std::ostringstream out;
  out << "gens " << p.generator_count() << "\n";
  for (const auto& r : p.relators()) out << "rel " << r.name << " " << format_word(r.word) << "\n";
  return out.str();
}

ScriptMove parse_move_line(std::string_view line) {
  const auto t = split_ws(strip_comment(line));
  if (t.empty()) throw InputError("empty move");
  if (t[0] == "inv" && t.size() == 2) return NamedInvert{t[1]};
  if (t[0] == "mulr" && t.size() == 3) return NamedMultiplyRight{t[1], t[2]};
  if (t[0] == "conj" && t.size() == 3) return NamedConjugate{t[1], parse_single_letter(t[2])};
  if (t[0] == "prolong" && t.size() == 1) return ProlongMove{};
  if (t[0] == "nielsen") {
    if (t.size() == 3 && t[1] == "inv") return NielsenMove{parse_generator(t[2]), NielsenKind::Invert, 0};
    if (t.size() == 4 && (t[1] == "rmul" || t[1] == "lmul")) {
      const int a = parse_generator(t[2]), b = parse_generator(t[3]);
      if (a == b) throw InputError("Nielsen multiplication needs distinct generators: " + std::string(line));
      return NielsenMove{a, t[1] == "rmul" ? NielsenKind::RightMultiply : NielsenKind::LeftMultiply, b};
    }
  }
  throw InputError("unrecognised move '" + std::string(line) + "'");
}

std::vector<ScriptMove> parse_moves(std::string_view text) {
  std::vector<ScriptMove> out;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    if (split_ws(strip_comment(raw)).empty()) continue;
    out.push_back(parse_move_line(raw));
  }
  return out;
}

QMove resolve(const ScriptMove& m, const Presentation& p) {
  return std::visit(overloaded{
                        [&](const NamedInvert& v) -> QMove { return InvertRelator{p.index_of(v.target)}; },
                        [&](const NamedMultiplyRight& v) -> QMove {
                          return MultiplyRight{p.index_of(v.target), p.index_of(v.other)};
                        },
                        [&](const NamedConjugate& v) -> QMove {
                          return ConjugateRelator{p.index_of(v.target), v.by};
                        },
                        [](const auto&) -> QMove { throw InputError("not a Q-move"); },
                    },
                    m);
}

Presentation apply_script_move(const Presentation& p, const ScriptMove& m) {
  return std::visit(overloaded{
                        [&](const NielsenMove& v) { return apply_nielsen(p, v); },
                        [&](const ProlongMove&) { return prolong(p); },
                        [&](const auto&) { return apply_qmove(p, resolve(m, p)); },
                    },
                    m);
}

std::string format_move(const ScriptMove& m) {
  return std::visit(
      overloaded{
          [](const NamedInvert& v) { return "inv " + v.target; },
          [](const NamedMultiplyRight& v) { return "mulr " + v.target + " " + v.other; },
          [](const NamedConjugate& v) { return "conj " + v.target + " " + format_letter(v.by); },
          [](const ProlongMove&) { return std::string("prolong"); },
          [](const NielsenMove& v) {
            const std::string a = format_letter(Letter(v.target, 1));
            switch (v.kind) {
              case NielsenKind::Invert:
                return "nielsen inv " + a;
              case NielsenKind::RightMultiply:
                return "nielsen rmul " + a + " " + format_letter(Letter(v.other, 1));
              case NielsenKind::LeftMultiply:
                return "nielsen lmul " + a + " " + format_letter(Letter(v.other, 1));
            }
            return std::string();
          },
      },
      m);
}

}  // namespace smove

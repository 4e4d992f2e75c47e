#include "qtop/manifold.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace qtop {

namespace {

enum class Tok { Ident, Int, String, Punct, End };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

std::vector<Token> tokenize(const std::string& s) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto advance = [&](size_t n) {
    for (size_t k = 0; k < n; ++k, ++i) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
    } else if (c == '#') {
      while (i < s.size() && s[i] != '\n') advance(1);
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      out.push_back({Tok::Ident, s.substr(i, j - i), line, col});
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c)) ||
               ((c == '-' || c == '+') && i + 1 < s.size() &&
                std::isdigit(static_cast<unsigned char>(s[i + 1])))) {
      size_t j = i + 1;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Tok::Int, s.substr(i, j - i), line, col});
      advance(j - i);
    } else if (c == '"') {
      size_t j = i + 1;
      while (j < s.size() && s[j] != '"' && s[j] != '\n') ++j;
      if (j >= s.size() || s[j] != '"') throw ParseError("unterminated string", line, col);
      out.push_back({Tok::String, s.substr(i + 1, j - i - 1), line, col});
      advance(j - i + 1);
    } else if (std::string("{}[](),=").find(c) != std::string::npos) {
      out.push_back({Tok::Punct, std::string(1, c), line, col});
      advance(1);
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", line, col);
    }
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

using Pair = std::pair<long, long>;
using Value = std::variant<long, std::string, std::vector<Pair>>;

struct Field {
  Value value;
  const Token* at;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  ManifoldDesc file() {
    expect_ident("manifold");
    ManifoldDesc m = presentation(true);
    if (peek().kind != Tok::End) fail("unexpected text after the manifold description");
    return m;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }
  [[noreturn]] void fail(const std::string& msg) const { fail_at(peek(), msg); }
  [[noreturn]] static void fail_at(const Token& t, const std::string& msg) {
    throw ParseError(msg, t.line, t.column);
  }
  bool is_punct(char c) const { return peek().kind == Tok::Punct && peek().text[0] == c; }
  void expect_punct(char c) {
    if (!is_punct(c)) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  void expect_ident(const std::string& word) {
    if (peek().kind != Tok::Ident || peek().text != word) fail("expected '" + word + "'");
    ++pos_;
  }

  long integer() {
    if (peek().kind != Tok::Int) fail("expected an integer");
    const Token& t = next();
    try {
      return std::stol(t.text);
    } catch (const std::exception&) {
      fail_at(t, "integer out of range");
    }
  }

  std::vector<Pair> pair_list() {
    expect_punct('[');
    std::vector<Pair> out;
    while (!is_punct(']')) {
      expect_punct('(');
      const long a = integer();
      expect_punct(',');
      const long b = integer();
      expect_punct(')');
      out.push_back({a, b});
      if (!is_punct(',')) break;
      ++pos_;
    }
    expect_punct(']');
    return out;
  }

  std::map<std::string, Field> fields() {
    std::map<std::string, Field> out;
    expect_punct('{');
    while (!is_punct('}')) {
      if (peek().kind != Tok::Ident) fail("expected a field name");
      const Token& name = next();
      expect_punct('=');
      Field f{0L, &name};
      if (peek().kind == Tok::Int) {
        f.value = integer();
      } else if (peek().kind == Tok::String) {
        f.value = next().text;
      } else if (is_punct('[')) {
        f.value = pair_list();
      } else {
        fail("expected a value");
      }
      if (!out.emplace(name.text, f).second) fail_at(name, "duplicate field '" + name.text + "'");
      if (!is_punct(',')) break;
      ++pos_;
    }
    expect_punct('}');
    return out;
  }

  static void only(const std::map<std::string, Field>& f, const std::set<std::string>& allowed,
                   const Token& head) {
    for (const auto& [k, v] : f) {
      if (!allowed.count(k)) fail_at(*v.at, "unknown field '" + k + "' in " + head.text);
    }
  }
  template <class T>
  static const T& get(const std::map<std::string, Field>& f, const std::string& key,
                      const Token& head, const char* what) {
    auto it = f.find(key);
    if (it == f.end()) fail_at(head, head.text + " needs field '" + key + "'");
    const T* v = std::get_if<T>(&it->second.value);
    if (!v) fail_at(*it->second.at, "field '" + key + "' must be " + what);
    return *v;
  }

  static int genus_field(const std::map<std::string, Field>& f, const Token& head) {
    const long g = get<long>(f, "genus", head, "an integer");
    if (g < 0 || g > 64) fail_at(*f.at("genus").at, "genus out of range");
    return static_cast<int>(g);
  }

  static MCGWord word_field(const std::map<std::string, Field>& f, const Token& head, int genus) {
    const std::string& text = get<std::string>(f, "word", head, "a string");
    const Token& at = *f.at("word").at;
    try {
      MCGWord w = parse_word(text);
      check_word(w, genus);
      return w;
    } catch (const ParseError& e) {
      // Columns inside the string are offset from the opening quote.
      throw ParseError(std::string("bad word: ") + e.what(), at.line, at.column);
    } catch (const Error& e) {
      fail_at(at, std::string("bad word: ") + e.what());
    }
  }

  ManifoldDesc presentation(bool top) {
    if (peek().kind != Tok::Ident) fail("expected a presentation kind");
    const Token& head = next();
    const std::string& kind = head.text;
    if (kind == "connected_sum") {
      if (!top) fail_at(head, "connected_sum cannot be nested");
      ConnectedSumDesc cs;
      expect_punct('{');
      while (!is_punct('}')) {
        const Token& part_at = peek();
        ManifoldDesc part = presentation(false);
        if (auto* l = std::get_if<LensDesc>(&part.body)) {
          cs.parts.push_back(*l);
        } else if (auto* h = std::get_if<HeegaardDesc>(&part.body)) {
          cs.parts.push_back(*h);
        } else {
          fail_at(part_at, "connected_sum accepts only lens and heegaard summands");
        }
        if (!is_punct(',')) break;
        ++pos_;
      }
      expect_punct('}');
      if (cs.parts.empty()) fail_at(head, "connected_sum needs at least one summand");
      return {std::move(cs)};
    }
    const auto f = fields();
    if (kind == "lens") {
      only(f, {"n", "q"}, head);
      LensDesc l{get<long>(f, "n", head, "an integer"), get<long>(f, "q", head, "an integer")};
      if (l.n < 0) fail_at(*f.at("n").at, "lens space needs n >= 0");
      if (std::gcd(l.n, l.q) != 1) {
        fail_at(head, "lens space L(" + std::to_string(l.n) + "," + std::to_string(l.q) +
                          ") needs gcd(n, q) = 1");
      }
      return {l};
    }
    if (kind == "heegaard" || kind == "mapping_torus") {
      only(f, {"genus", "word"}, head);
      const int g = genus_field(f, head);
      MCGWord w = word_field(f, head, g);
      if (kind == "heegaard") return {HeegaardDesc{g, std::move(w)}};
      return {MappingTorusDesc{g, std::move(w)}};
    }
    if (kind == "plumbing") {
      only(f, {"vertices", "edges", "meridians"}, head);
      PlumbingTree t;
      for (const auto& [id, fr] : get<std::vector<Pair>>(f, "vertices", head, "a list of pairs")) {
        t.vertices.push_back({id, fr});
      }
      if (f.count("edges")) t.edges = get<std::vector<Pair>>(f, "edges", head, "a list of pairs");
      if (f.count("meridians")) {
        for (const auto& [v, c] : get<std::vector<Pair>>(f, "meridians", head, "a list of pairs")) {
          t.meridians.push_back({v, static_cast<int>(c)});
        }
      }
      try {
        t.validate();
      } catch (const InvalidArgument& e) {
        fail_at(head, e.what());
      }
      return {std::move(t)};
    }
    fail_at(head, "unknown presentation kind '" + kind + "'");
  }

  std::vector<Token> toks_;
  size_t pos_ = 0;
};

}  // namespace

std::string ManifoldDesc::kind() const {
  static const char* names[] = {"lens", "heegaard", "plumbing", "mapping_torus", "connected_sum"};
  return names[body.index()];
}

ManifoldDesc parse_manifold(const std::string& text) { return Parser(tokenize(text)).file(); }

ManifoldDesc load_manifold(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_manifold(ss.str());
}

std::optional<HeegaardPresentation> heegaard_presentation(const ManifoldDesc& m) {
  if (const auto* l = std::get_if<LensDesc>(&m.body)) return HeegaardPresentation{lens_word(l->n, l->q), 1};
  if (const auto* h = std::get_if<HeegaardDesc>(&m.body)) return HeegaardPresentation{h->word, h->genus};
  if (const auto* cs = std::get_if<ConnectedSumDesc>(&m.body)) {
    HeegaardPresentation out;
    for (const auto& part : cs->parts) {
      HeegaardPresentation piece =
          std::holds_alternative<LensDesc>(part)
              ? HeegaardPresentation{lens_word(std::get<LensDesc>(part).n, std::get<LensDesc>(part).q), 1}
              : HeegaardPresentation{std::get<HeegaardDesc>(part).word, std::get<HeegaardDesc>(part).genus};
      out.word = concat(out.word, block_embed(piece.word, out.genus));
      out.genus += piece.genus;
    }
    return out;
  }
  return std::nullopt;
}

std::optional<PlumbingTree> surgery_presentation(const ManifoldDesc& m) {
  if (const auto* t = std::get_if<PlumbingTree>(&m.body)) return *t;
  if (const auto* l = std::get_if<LensDesc>(&m.body)) {
    if (l->n >= 1) return lens_chain(l->n, l->q);
  }
  return std::nullopt;
}

}  // namespace qtop

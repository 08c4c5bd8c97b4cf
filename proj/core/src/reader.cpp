// Copyright 2026 The Termblast Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "termblast/reader.hpp"

#include <cctype>
#include <sstream>

namespace termblast {

std::string SourcePos::to_string() const {
  std::ostringstream os;
  os << file << ":" << line << ":" << col;
  return os.str();
}

ParseError::ParseError(const SourcePos& pos, const std::string& msg)
    : std::runtime_error(pos.to_string() + ": " + msg), pos_(pos) {}

struct Reader::Token {
  enum class Kind { LParen, RParen, Dot, Quote, Atom, Eof } kind;
  Value atom;  // for Kind::Atom
  SourcePos pos;
};

Reader::Reader(std::string_view text, std::string filename)
    : text_(text), file_(std::move(filename)) {}

SourcePos Reader::pos() const { return SourcePos{file_, line_, col_}; }

namespace {

bool delimiter(char c) {
  return std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' ||
         c == ';' || c == '\'' || c == '"' || c == '`' || c == ',';
}

bool integer_token(const std::string& s) {
  if (s.empty()) return false;
  size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

// Upcases and strips any leading `pkg::` package prefix; keywords keep
// their colon and never carry a package.
std::string normalize_symbol(std::string s) {
  for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (!s.empty() && s[0] != ':') {
    size_t p = s.rfind("::");
    if (p != std::string::npos && p + 2 < s.size()) s = s.substr(p + 2);
  }
  return s;
}

}  // namespace

Reader::Token Reader::lex() {
  auto advance = [&](char c) {
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++i_;
  };

  for (;;) {
    if (i_ >= text_.size()) return Token{Token::Kind::Eof, Value::nil(), pos()};
    char c = text_[i_];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(c);
      continue;
    }
    if (c == ';') {
      while (i_ < text_.size() && text_[i_] != '\n') advance(text_[i_]);
      continue;
    }
    SourcePos at = pos();
    if (c == '(') {
      advance(c);
      return Token{Token::Kind::LParen, Value::nil(), at};
    }
    if (c == ')') {
      advance(c);
      return Token{Token::Kind::RParen, Value::nil(), at};
    }
    if (c == '\'') {
      advance(c);
      return Token{Token::Kind::Quote, Value::nil(), at};
    }
    if (c == '`' || c == ',') {
      // Backquote and comma are flattened at parse time.
      advance(c);
      if (i_ < text_.size() && text_[i_] == '@')
        throw ParseError(at, ",@ splicing is not supported");
      continue;
    }
    if (c == '"') {
      advance(c);
      std::string s;
      for (;;) {
        if (i_ >= text_.size()) throw ParseError(at, "unterminated string");
        char d = text_[i_];
        advance(d);
        if (d == '"') break;
        if (d == '\\') {
          if (i_ >= text_.size()) throw ParseError(at, "unterminated string escape");
          s.push_back(text_[i_]);
          advance(text_[i_]);
        } else {
          s.push_back(d);
        }
      }
      return Token{Token::Kind::Atom, Value::string(std::move(s)), at};
    }
    if (c == '|') {
      advance(c);
      std::string s;
      for (;;) {
        if (i_ >= text_.size()) throw ParseError(at, "unterminated |symbol|");
        char d = text_[i_];
        advance(d);
        if (d == '|') break;
        if (d == '\\') {
          if (i_ >= text_.size()) throw ParseError(at, "unterminated symbol escape");
          s.push_back(text_[i_]);
          advance(text_[i_]);
        } else {
          s.push_back(d);
        }
      }
      return Token{Token::Kind::Atom, Value::symbol(s), at};
    }
    // Plain token: symbol, integer, or the standalone dot.
    std::string tok;
    while (i_ < text_.size() && !delimiter(text_[i_]) && text_[i_] != '|') {
      tok.push_back(text_[i_]);
      advance(text_[i_]);
    }
    if (tok.empty()) throw ParseError(at, std::string("unexpected character '") + c + "'");
    if (tok == ".") return Token{Token::Kind::Dot, Value::nil(), at};
    if (integer_token(tok)) {
      mpz_class n(tok, 10);
      return Token{Token::Kind::Atom, Value::integer(std::move(n)), at};
    }
    return Token{Token::Kind::Atom, Value::symbol(normalize_symbol(tok)), at};
  }
}

Value Reader::parse(Token tok) {
  switch (tok.kind) {
    case Token::Kind::Atom:
      return tok.atom;
    case Token::Kind::LParen:
      return parse_list();
    case Token::Kind::Quote: {
      Token inner = lex();
      if (inner.kind == Token::Kind::Eof)
        throw ParseError(tok.pos, "end of input after quote");
      static const Value quote_sym = Value::symbol("QUOTE");
      return list_of({quote_sym, parse(inner)});
    }
    case Token::Kind::RParen:
      throw ParseError(tok.pos, "unexpected ')'");
    case Token::Kind::Dot:
      throw ParseError(tok.pos, "unexpected '.'");
    case Token::Kind::Eof:
      throw ParseError(tok.pos, "unexpected end of input");
  }
  throw ParseError(tok.pos, "unreachable");
}

Value Reader::parse_list() {
  std::vector<Value> elems;
  for (;;) {
    Token tok = lex();
    if (tok.kind == Token::Kind::Eof)
      throw ParseError(tok.pos, "unterminated list");
    if (tok.kind == Token::Kind::RParen) return list_of(elems);
    if (tok.kind == Token::Kind::Dot) {
      if (elems.empty()) throw ParseError(tok.pos, "dot at start of list");
      Token tailtok = lex();
      if (tailtok.kind == Token::Kind::RParen || tailtok.kind == Token::Kind::Eof ||
          tailtok.kind == Token::Kind::Dot)
        throw ParseError(tailtok.pos, "malformed dotted tail");
      Value tail = parse(tailtok);
      Token close = lex();
      if (close.kind != Token::Kind::RParen)
        throw ParseError(close.pos, "expected ')' after dotted tail");
      Value out = tail;
      for (auto it = elems.rbegin(); it != elems.rend(); ++it)
        out = Value::cons(*it, out);
      return out;
    }
    elems.push_back(parse(tok));
  }
}

std::optional<Value> Reader::next() {
  Token tok = lex();
  if (tok.kind == Token::Kind::Eof) return std::nullopt;
  return parse(tok);
}

std::vector<Value> read_all(std::string_view text, std::string filename) {
  Reader r(text, std::move(filename));
  std::vector<Value> out;
  while (auto v = r.next()) out.push_back(*v);
  return out;
}

}  // namespace termblast

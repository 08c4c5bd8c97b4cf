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

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "termblast/value.hpp"

namespace termblast {

struct SourcePos {
  std::string file;
  int line = 1;
  int col = 1;
  std::string to_string() const;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const SourcePos& pos, const std::string& msg);
  const SourcePos& pos() const { return pos_; }

 private:
  SourcePos pos_;
};

/// Reads s-expressions from text into Values.
///
/// Syntax: `(`/`)`, dotted pairs, `'x` => (QUOTE x), `;` line comments,
/// integers, "strings", |escaped symbols|. Bare symbol tokens are upcased
/// and any `pkg::` prefix is stripped; `|...|` preserves case. Backquote
/// and comma are flattened (treated as transparent), which is how
/// :g-bindings forms are written.
class Reader {
 public:
  Reader(std::string_view text, std::string filename = "<input>");

  /// Next toplevel form, or nullopt at end of input. Throws ParseError.
  std::optional<Value> next();
  SourcePos pos() const;

 private:
  struct Token;
  Token lex();
  Value parse(Token tok);
  Value parse_list();

  std::string_view text_;
  std::string file_;
  size_t i_ = 0;
  int line_ = 1, col_ = 1;
};

/// Reads every toplevel form in `text`.
std::vector<Value> read_all(std::string_view text, std::string filename = "<input>");

}  // namespace termblast

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

#include "termblast/value.hpp"

namespace termblast {

/// Interned ids for the symbols the engine recognizes by name.
struct Syms {
  SymbolId T = intern("T");
  SymbolId NIL = intern("NIL");
  SymbolId QUOTE = intern("QUOTE");
  SymbolId IF = intern("IF");
  SymbolId LAMBDA = intern("LAMBDA");

  // Core primitives.
  SymbolId CONS = intern("CONS");
  SymbolId CAR = intern("CAR");
  SymbolId CDR = intern("CDR");
  SymbolId CONSP = intern("CONSP");
  SymbolId EQUAL = intern("EQUAL");
  SymbolId NOT = intern("NOT");
  SymbolId INTEGERP = intern("INTEGERP");
  SymbolId SYMBOLP = intern("SYMBOLP");
  SymbolId BOOLEANP = intern("BOOLEANP");
  SymbolId STRINGP = intern("STRINGP");
  SymbolId BINARY_PLUS = intern("BINARY-+");
  SymbolId BINARY_STAR = intern("BINARY-*");
  SymbolId UNARY_MINUS = intern("UNARY--");
  SymbolId LESS = intern("<");
  SymbolId FLOOR = intern("FLOOR");
  SymbolId MOD = intern("MOD");
  SymbolId ACL2_NUMBERP = intern("ACL2-NUMBERP");
  SymbolId LLORDER = intern("<<");

  // Macros expanded by the term parser.
  SymbolId AND = intern("AND");
  SymbolId OR = intern("OR");
  SymbolId IMPLIES = intern("IMPLIES");
  SymbolId IFF = intern("IFF");
  SymbolId LET = intern("LET");
  SymbolId LET_STAR = intern("LET*");
  SymbolId LIST = intern("LIST");
  SymbolId PLUS = intern("+");
  SymbolId MINUS = intern("-");
  SymbolId STAR = intern("*");
  SymbolId ONE_MINUS = intern("1-");
  SymbolId ONE_PLUS = intern("1+");
  SymbolId GREATER = intern(">");
  SymbolId LEQ = intern("<=");
  SymbolId GEQ = intern(">=");

  // Prelude functions the engine knows about.
  SymbolId LOGHEAD = intern("LOGHEAD");
  SymbolId LOGEXT = intern("LOGEXT");
  SymbolId LOGBITP = intern("LOGBITP");
  SymbolId LOGNOT = intern("LOGNOT");
  SymbolId LOGCONS = intern("LOGCONS");
  SymbolId ASH = intern("ASH");
  SymbolId BOOL_TO_BIT = intern("BOOL->BIT");
  SymbolId NTH = intern("NTH");
  SymbolId GL_FORCE_CHECK = intern("GL-FORCE-CHECK");
  SymbolId SHAPE_SPEC_OBJ_IN_RANGE = intern("SHAPE-SPEC-OBJ-IN-RANGE");
  SymbolId RANDOM_INT = intern("RANDOM-INT");

  // Event heads.
  SymbolId DEFUN = intern("DEFUN");
  SymbolId GL_SET_UNINTERPRETED = intern("GL-SET-UNINTERPRETED");
  SymbolId DEF_GL_REWRITE = intern("DEF-GL-REWRITE");
  SymbolId DEF_GL_BRANCH_MERGE = intern("DEF-GL-BRANCH-MERGE");
  SymbolId DEF_GL_BOOLEAN_CONSTRAINT = intern("DEF-GL-BOOLEAN-CONSTRAINT");
  SymbolId DEF_GLCP_CTREX_REWRITE = intern("DEF-GLCP-CTREX-REWRITE");
  SymbolId DEF_GL_THM = intern("DEF-GL-THM");

  // Keywords.
  SymbolId K_HYP = intern(":HYP");
  SymbolId K_CONCL = intern(":CONCL");
  SymbolId K_G_BINDINGS = intern(":G-BINDINGS");
  SymbolId K_RULE_CLASSES = intern(":RULE-CLASSES");
  SymbolId K_COV_THEORY_ADD = intern(":COV-THEORY-ADD");
  SymbolId K_COV_SAMPLES = intern(":COV-SAMPLES");
  SymbolId K_EXPECT = intern(":EXPECT");
  SymbolId K_BINDINGS = intern(":BINDINGS");
  SymbolId K_BODY = intern(":BODY");
  SymbolId K_CONCRETE_ONLY = intern(":CONCRETE-ONLY");
  SymbolId SYNTAXP = intern("SYNTAXP");
  SymbolId FAIL = intern("FAIL");
  SymbolId FAIL_UNVERIFIED = intern("FAIL-UNVERIFIED");

  // Symbolic-object reflection tags (used by syntaxp hypotheses).
  SymbolId K_CONCRETE = intern(":CONCRETE");
  SymbolId K_G_BOOLEAN = intern(":G-BOOLEAN");
  SymbolId K_G_INTEGER = intern(":G-INTEGER");
  SymbolId K_G_CONS = intern(":G-CONS");
  SymbolId K_G_ITE = intern(":G-ITE");
  SymbolId K_G_APPLY = intern(":G-APPLY");
  SymbolId K_G_VAR = intern(":G-VAR");
  SymbolId K_G_CONCRETE = intern(":G-CONCRETE");
  SymbolId K_G_CALL = intern(":G-CALL");

  // Reflection accessors, evaluated on raw reflections inside syntaxp.
  SymbolId TAG = intern("TAG");
  SymbolId EQ = intern("EQ");
  SymbolId GENERAL_CONCRETEP = intern("GENERAL-CONCRETEP");
  SymbolId GENERAL_CONCRETE_OBJ = intern("GENERAL-CONCRETE-OBJ");
  SymbolId G_APPLY_TO_FN = intern("G-APPLY->FN");
  SymbolId G_APPLY_TO_ARGS = intern("G-APPLY->ARGS");

  // Shape-spec DSL heads.
  SymbolId G_INT = intern("G-INT");
  SymbolId G_BOOLEAN_HEAD = intern("G-BOOLEAN");
  SymbolId G_VAR_HEAD = intern("G-VAR");
  SymbolId G_CALL_HEAD = intern("G-CALL");

  static const Syms& get();
};

inline const Syms& syms() { return Syms::get(); }

}  // namespace termblast

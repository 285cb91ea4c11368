// Copyright 2026 The Repograph Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "repograph/ingest/python_adapter.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <set>
#include <unordered_set>

#include "repograph/core/error.hpp"
#include "repograph/core/file_types.hpp"

namespace repograph {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

// One logical line. `code` has every string literal replaced by "S" and
// comments removed; `text` keeps literals verbatim. code_to_text maps each
// code offset to the matching text offset.
struct LogicalLine {
  int first = 0;
  int last = 0;
  int indent = 0;
  std::string code;
  std::string text;
  std::vector<std::size_t> code_to_text;
  std::vector<std::string> literals;
  bool only_strings = false;
};

class Scanner {
 public:
  explicit Scanner(std::string_view src) : s_(src) {}

  std::vector<LogicalLine> run() {
    std::vector<LogicalLine> out;
    while (pos_ < s_.size()) {
      const int indent = measure_indent();
      if (pos_ >= s_.size()) break;
      if (s_[pos_] == '\n' || s_[pos_] == '\r' || s_[pos_] == '#' || s_[pos_] == '\f') {
        skip_to_eol();
        continue;
      }
      LogicalLine l;
      l.first = line_;
      l.indent = indent;
      read_logical(l);
      l.last = line_;
      finish(l);
      consume_eol();
      out.push_back(std::move(l));
    }
    return out;
  }

 private:
  int measure_indent() {
    int col = 0;
    while (pos_ < s_.size()) {
      const char c = s_[pos_];
      if (c == ' ') ++col;
      else if (c == '\t') col = (col / 8 + 1) * 8;
      else break;
      ++pos_;
    }
    return col;
  }

  void skip_to_eol() {
    while (pos_ < s_.size() && s_[pos_] != '\n') ++pos_;
    consume_eol();
  }

  void consume_eol() {
    if (pos_ < s_.size() && s_[pos_] == '\n') {
      ++pos_;
      ++line_;
    }
  }

  void emit(LogicalLine& l, char c) {
    l.code.push_back(c);
    l.code_to_text.push_back(l.text.size());
    l.text.push_back(c);
  }

  std::size_t string_start() const {
    // Returns the prefix length if a string literal starts at pos_.
    std::size_t k = 0;
    while (k < 2 && pos_ + k < s_.size() && std::strchr("rRbBuUfF", s_[pos_ + k]) && s_[pos_ + k] != '\0') ++k;
    for (std::size_t len = 0; len <= k; ++len) {
      if (pos_ + len < s_.size() && (s_[pos_ + len] == '"' || s_[pos_ + len] == '\'')) {
        if (len > 0 && pos_ > 0 && ident_char(s_[pos_ - 1])) return std::string::npos;
        // Only accept the longest run of prefix letters that is really a prefix.
        bool all_prefix = true;
        for (std::size_t i = 0; i < len; ++i)
          if (!std::strchr("rRbBuUfF", s_[pos_ + i])) all_prefix = false;
        if (all_prefix) return len;
      }
    }
    return std::string::npos;
  }

  void read_string(LogicalLine& l, std::size_t prefix_len) {
    const std::size_t start = pos_;
    bool raw = false;
    for (std::size_t i = 0; i < prefix_len; ++i) raw |= (s_[pos_ + i] == 'r' || s_[pos_ + i] == 'R');
    pos_ += prefix_len;
    const char q = s_[pos_];
    const bool triple = pos_ + 2 < s_.size() && s_[pos_ + 1] == q && s_[pos_ + 2] == q;
    pos_ += triple ? 3 : 1;
    std::string value;
    while (pos_ < s_.size()) {
      const char c = s_[pos_];
      if (c == '\\' && pos_ + 1 < s_.size()) {
        if (s_[pos_ + 1] == '\n') ++line_;
        if (raw) value.push_back(c), value.push_back(s_[pos_ + 1]);
        else value.push_back(s_[pos_ + 1] == 'n' ? '\n' : s_[pos_ + 1] == 't' ? '\t' : s_[pos_ + 1]);
        pos_ += 2;
        continue;
      }
      if (c == q && (!triple || (pos_ + 2 < s_.size() && s_[pos_ + 1] == q && s_[pos_ + 2] == q))) {
        pos_ += triple ? 3 : 1;
        break;
      }
      if (c == '\n') {
        if (!triple) break;  // unterminated single-quoted literal: stop at EOL
        ++line_;
      }
      value.push_back(c);
      ++pos_;
    }
    l.code += "\"S\"";
    for (int i = 0; i < 3; ++i) l.code_to_text.push_back(l.text.size());
    l.text.append(s_.substr(start, pos_ - start));
    l.literals.push_back(std::move(value));
  }

  void read_logical(LogicalLine& l) {
    int depth = 0;
    while (pos_ < s_.size()) {
      const char c = s_[pos_];
      if (c == '\n') {
        if (depth == 0) return;
        ++line_;
        ++pos_;
        emit(l, ' ');
        continue;
      }
      if (c == '\r') {
        ++pos_;
        continue;
      }
      if (c == '#') {
        while (pos_ < s_.size() && s_[pos_] != '\n') ++pos_;
        continue;
      }
      if (c == '\\' && pos_ + 1 < s_.size() && (s_[pos_ + 1] == '\n' || s_[pos_ + 1] == '\r')) {
        pos_ += 1;
        if (s_[pos_] == '\r') ++pos_;
        if (pos_ < s_.size() && s_[pos_] == '\n') {
          ++pos_;
          ++line_;
        }
        emit(l, ' ');
        continue;
      }
      if (const std::size_t p = string_start(); p != std::string::npos) {
        read_string(l, p);
        continue;
      }
      if (c == '(' || c == '[' || c == '{') ++depth;
      if ((c == ')' || c == ']' || c == '}') && depth > 0) --depth;
      emit(l, c == '\t' ? ' ' : c);
      ++pos_;
    }
  }

  static void finish(LogicalLine& l) {
    while (!l.code.empty() && std::isspace(static_cast<unsigned char>(l.code.back()))) {
      l.code.pop_back();
      l.code_to_text.pop_back();
    }
    bool only = !l.literals.empty();
    for (std::size_t i = 0; i < l.code.size() && only;) {
      if (l.code.compare(i, 3, "\"S\"") == 0) i += 3;
      else if (l.code[i] == ' ') ++i;
      else only = false;
    }
    l.only_strings = only;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  int line_ = 1;
};

std::string cleandoc(const std::string& raw) {
  std::vector<std::string> lines;
  std::size_t pos = 0;
  while (true) {
    const std::size_t eol = raw.find('\n', pos);
    lines.push_back(raw.substr(pos, eol == std::string::npos ? std::string::npos : eol - pos));
    if (eol == std::string::npos) break;
    pos = eol + 1;
  }
  auto lstrip = [](std::string& s) { s.erase(0, s.find_first_not_of(" \t")); };
  auto rstrip = [](std::string& s) { s.erase(s.find_last_not_of(" \t\r") + 1); };
  std::size_t margin = std::string::npos;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::size_t ind = lines[i].find_first_not_of(" \t");
    if (ind != std::string::npos) margin = std::min(margin, ind);
  }
  lstrip(lines[0]);
  for (std::size_t i = 1; i < lines.size(); ++i)
    lines[i] = margin == std::string::npos || lines[i].size() < margin ? std::string() : lines[i].substr(margin);
  for (auto& l : lines) rstrip(l);
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  std::size_t start = 0;
  while (start < lines.size() && lines[start].empty()) ++start;
  std::string out;
  for (std::size_t i = start; i < lines.size(); ++i) {
    if (i > start) out += '\n';
    out += lines[i];
  }
  return out;
}

std::string collapse_ws(std::string_view s) {
  std::string out;
  bool space = false;
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      space = !out.empty();
      continue;
    }
    if (space) out += ' ';
    space = false;
    out += c;
  }
  return out;
}

std::string strip_spaces(std::string_view s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  return out;
}

bool is_dotted_name(std::string_view s) {
  if (s.empty()) return false;
  bool expect_start = true;
  for (char c : s) {
    if (expect_start) {
      if (!ident_start(c)) return false;
      expect_start = false;
    } else if (c == '.') {
      expect_start = true;
    } else if (!ident_char(c)) {
      return false;
    }
  }
  return !expect_start;
}

std::vector<std::string> split_top_level(std::string_view s, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(' || c == '[' || c == '{') ++depth;
    if (c == ')' || c == ']' || c == '}') --depth;
    if (c == sep && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

const std::unordered_set<std::string>& keywords() {
  static const std::unordered_set<std::string> k = {
      "False", "None",   "True",  "and",    "as",     "assert", "async",  "await",    "break",
      "class", "continue", "def", "del",    "elif",   "else",   "except", "finally",  "for",
      "from",  "global", "if",    "import", "in",     "is",     "lambda", "nonlocal", "not",
      "or",    "pass",   "raise", "return", "try",    "while",  "with",   "yield",    "match",
      "case",  "print"};
  return k;
}

struct Header {
  bool is_class = false;
  std::string name;
  std::size_t colon = std::string::npos;  // offset in code of the header's ':'
  std::string bases;                      // class only, code text inside (...)
};

std::optional<Header> parse_header(const std::string& code) {
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < code.size() && code[i] == ' ') ++i;
  };
  auto word = [&](std::string_view w) {
    if (code.compare(i, w.size(), w) == 0 && (i + w.size() >= code.size() || !ident_char(code[i + w.size()]))) {
      i += w.size();
      return true;
    }
    return false;
  };
  Header h;
  if (word("async")) {
    skip_ws();
    if (!word("def")) return std::nullopt;
  } else if (word("class")) {
    h.is_class = true;
  } else if (!word("def")) {
    return std::nullopt;
  }
  skip_ws();
  const std::size_t ns = i;
  if (i >= code.size() || !ident_start(code[i])) return std::nullopt;
  while (i < code.size() && ident_char(code[i])) ++i;
  h.name = code.substr(ns, i - ns);
  skip_ws();
  if (i < code.size() && code[i] == '[') {  // PEP 695 type parameters
    int depth = 0;
    for (; i < code.size(); ++i) {
      if (code[i] == '[') ++depth;
      if (code[i] == ']' && --depth == 0) {
        ++i;
        break;
      }
    }
    skip_ws();
  }
  if (!h.is_class && (i >= code.size() || code[i] != '(')) return std::nullopt;
  int depth = 0;
  std::size_t open = std::string::npos;
  for (; i < code.size(); ++i) {
    const char c = code[i];
    if (c == '(' || c == '[' || c == '{') {
      if (depth == 0 && c == '(' && open == std::string::npos) open = i;
      ++depth;
    } else if (c == ')' || c == ']' || c == '}') {
      --depth;
      if (depth == 0 && c == ')' && h.is_class && open != std::string::npos && h.bases.empty())
        h.bases = code.substr(open + 1, i - open - 1);
    } else if (c == ':' && depth == 0) {
      h.colon = i;
      break;
    }
  }
  if (h.colon == std::string::npos) return std::nullopt;
  return h;
}

// Dotted call targets `a.b.c(` in `code` from `from` onward.
std::vector<std::string> call_targets(const std::string& code, std::size_t from) {
  std::vector<std::string> out;
  std::size_t i = from;
  while (i < code.size()) {
    if (!ident_start(code[i]) || (i > 0 && (ident_char(code[i - 1]) || code[i - 1] == '.'))) {
      ++i;
      continue;
    }
    // Literal placeholder "S" is never a name.
    if (i > 0 && code[i - 1] == '"') {
      ++i;
      continue;
    }
    std::size_t j = i;
    std::string chain;
    while (true) {
      const std::size_t s = j;
      while (j < code.size() && ident_char(code[j])) ++j;
      chain.append(code, s, j - s);
      std::size_t k = j;
      while (k < code.size() && code[k] == ' ') ++k;
      if (k < code.size() && code[k] == '.') {
        ++k;
        while (k < code.size() && code[k] == ' ') ++k;
        if (k < code.size() && ident_start(code[k])) {
          chain += '.';
          j = k;
          continue;
        }
      }
      break;
    }
    std::size_t k = j;
    while (k < code.size() && code[k] == ' ') ++k;
    const std::string head = chain.substr(0, chain.find('.'));
    if (k < code.size() && code[k] == '(' && !keywords().count(head)) out.push_back(chain);
    i = j;
  }
  return out;
}

void parse_imports(const std::string& code, int line, std::vector<ImportBinding>& out) {
  for (const std::string& stmt_raw : split_top_level(code, ';')) {
    const std::string stmt = trim(stmt_raw);
    if (stmt.rfind("import ", 0) == 0) {
      for (const std::string& part : split_top_level(stmt.substr(7), ',')) {
        const std::string p = trim(part);
        const std::size_t as = p.find(" as ");
        ImportBinding b;
        b.module = strip_spaces(p.substr(0, as));
        b.binding = as == std::string::npos ? b.module : trim(p.substr(as + 4));
        b.line = line;
        if (is_dotted_name(b.module) && is_dotted_name(b.binding)) out.push_back(std::move(b));
      }
    } else if (stmt.rfind("from ", 0) == 0) {
      const std::size_t imp = stmt.find(" import ");
      if (imp == std::string::npos) continue;
      const std::string module = strip_spaces(stmt.substr(5, imp - 5));
      std::string names = trim(stmt.substr(imp + 8));
      if (!names.empty() && names.front() == '(') {
        names.erase(0, 1);
        if (!names.empty() && names.back() == ')') names.pop_back();
      }
      const std::string bare = module.substr(module.find_first_not_of('.') == std::string::npos
                                                 ? module.size()
                                                 : module.find_first_not_of('.'));
      if (!bare.empty() && !is_dotted_name(bare)) continue;
      for (const std::string& part : split_top_level(names, ',')) {
        const std::string p = trim(part);
        if (p.empty()) continue;
        const std::size_t as = p.find(" as ");
        ImportBinding b;
        b.module = module;
        b.symbol = trim(p.substr(0, as));
        b.binding = as == std::string::npos ? b.symbol : trim(p.substr(as + 4));
        b.line = line;
        if (b.symbol == "*" || (is_dotted_name(b.symbol) && is_dotted_name(b.binding))) out.push_back(std::move(b));
      }
    }
  }
}

struct Frame {
  int indent = 0;
  int entity = -1;      // index into entities, -1 for an opaque block
  bool alias = false;   // duplicate definition that reuses an earlier entity
  bool is_class = false;
  int last_line = 0;
};

}  // namespace

ParsedFile PythonAdapter::parse(std::string_view content, const std::string& path) const {
  ParsedFile out;
  out.path = path;
  out.language = "Python";

  std::vector<std::string_view> phys;  // 1-based access via phys[line-1]
  for (std::size_t pos = 0; pos <= content.size();) {
    const std::size_t eol = content.find('\n', pos);
    std::string_view l = content.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    if (!l.empty() && l.back() == '\r') l.remove_suffix(1);
    phys.push_back(l);
    if (eol == std::string_view::npos) break;
    pos = eol + 1;
  }
  auto source_lines = [&](int a, int b) {
    std::string s;
    for (int i = a; i <= b && i <= static_cast<int>(phys.size()); ++i) {
      if (i > a) s += '\n';
      s.append(phys[static_cast<std::size_t>(i - 1)]);
    }
    return s;
  };

  const std::vector<LogicalLine> lines = Scanner(content).run();
  std::vector<Frame> stack;
  std::set<std::pair<std::string, std::string>> seen_rel;
  std::vector<std::pair<NodeKind, std::string>> defined;  // (kind, qualified name) per entity
  int expect_doc = -2;  // entity index awaiting a docstring; -1 = module
  int decorator_start = 0;

  auto close_frame = [&] {
    const Frame f = stack.back();
    stack.pop_back();
    if (f.entity >= 0 && !f.alias) {
      auto& e = out.entities[static_cast<std::size_t>(f.entity)];
      e.line_span.end = std::max(e.line_span.start, f.last_line);
      e.raw_content = source_lines(e.line_span.start, e.line_span.end);
    }
  };

  if (!lines.empty() && lines.front().only_strings && lines.front().indent == 0) expect_doc = -1;

  for (std::size_t li = 0; li < lines.size(); ++li) {
    const LogicalLine& l = lines[li];
    while (!stack.empty() && l.indent <= stack.back().indent) close_frame();

    if (expect_doc != -2) {
      const bool fits = expect_doc == -1 || (!stack.empty() && stack.back().entity == expect_doc);
      if (fits && l.only_strings) {
        std::string doc;
        for (const auto& s : l.literals) doc += s;
        doc = cleandoc(doc);
        if (!doc.empty()) {
          if (expect_doc == -1) out.docstring = doc;
          else out.entities[static_cast<std::size_t>(expect_doc)].docstring = doc;
        }
      }
      expect_doc = -2;
    }
    for (auto& f : stack) f.last_line = l.last;

    if (!l.code.empty() && l.code.front() == '@') {
      if (!decorator_start) decorator_start = l.first;
      continue;
    }
    const int start_line = decorator_start ? decorator_start : l.first;
    decorator_start = 0;

    // Innermost entity for attributing calls.
    int owner = -1;
    for (auto it = stack.rbegin(); it != stack.rend(); ++it)
      if (it->entity >= 0) {
        owner = it->entity;
        break;
      }

    if (l.code.rfind("import ", 0) == 0 || l.code.rfind("from ", 0) == 0) {
      parse_imports(l.code, l.first, out.imports);
      continue;
    }

    std::size_t calls_from = 0;
    if (auto h = parse_header(l.code)) {
      calls_from = h->colon + 1;
      const bool inside_callable = std::any_of(stack.begin(), stack.end(), [](const Frame& f) {
        return f.entity < 0 || !f.is_class;
      });
      const Frame* cls = nullptr;
      if (!stack.empty() && stack.back().entity >= 0 && stack.back().is_class) cls = &stack.back();

      Frame frame;
      frame.indent = l.indent;
      frame.is_class = h->is_class;
      frame.last_line = l.last;
      if (!inside_callable) {
        ParsedEntity e;
        e.name = h->name;
        const std::string prefix =
            cls ? out.entities[static_cast<std::size_t>(cls->entity)].qualified_name + "." : std::string();
        e.qualified_name = prefix + h->name;
        if (h->is_class) {
          e.kind = NodeKind::Class;
        } else {
          e.kind = cls ? NodeKind::MemberFunction : NodeKind::Function;
          if (cls) e.parent = static_cast<std::size_t>(cls->entity);
          const std::size_t text_end = l.code_to_text[h->colon];
          e.signature = collapse_ws(std::string_view(l.text).substr(0, text_end));
        }
        // Nested classes hang off the file with a dotted qualified name.
        e.line_span = LineSpan{start_line, l.last};
        const auto dup = std::find(defined.begin(), defined.end(), std::make_pair(e.kind, e.qualified_name));
        if (dup != defined.end()) {
          frame.entity = static_cast<int>(dup - defined.begin());
          frame.alias = true;
        } else {
          frame.entity = static_cast<int>(out.entities.size());
          defined.emplace_back(e.kind, e.qualified_name);
          out.entities.push_back(std::move(e));
          expect_doc = frame.entity;
        }
        if (h->is_class && !frame.alias) {
          for (const std::string& base_raw : split_top_level(h->bases, ',')) {
            std::string base = strip_spaces(base_raw);
            if (base.empty() || base.front() == '*' || base.find('=') != std::string::npos) continue;
            if (const auto br = base.find('['); br != std::string::npos) base.resize(br);
            if (!is_dotted_name(base) || base == "object") continue;
            const std::string& src = out.entities[static_cast<std::size_t>(frame.entity)].qualified_name;
            if (seen_rel.emplace("I" + src, base).second)
              out.relations.push_back({EdgeKind::Inherits, src, base, l.first});
          }
        }
        // Calls in a one-line body belong to the new entity.
        if (!h->is_class) owner = frame.entity;
      }
      stack.push_back(frame);
    }

    if (owner >= 0 && out.entities[static_cast<std::size_t>(owner)].kind != NodeKind::Class) {
      const std::string& src = out.entities[static_cast<std::size_t>(owner)].qualified_name;
      for (const std::string& target : call_targets(l.code, calls_from)) {
        if (is_builtin(target)) continue;
        if (seen_rel.emplace("C" + src, target).second)
          out.relations.push_back({EdgeKind::Calls, src, target, l.first});
      }
    }
  }
  while (!stack.empty()) close_frame();
  return out;
}

bool PythonAdapter::is_builtin(std::string_view name) const {
  static const std::unordered_set<std::string_view> builtins = {
      "abs",       "all",        "any",        "ascii",       "bin",         "bool",      "breakpoint",
      "bytearray", "bytes",      "callable",   "chr",         "classmethod", "compile",   "complex",
      "delattr",   "dict",       "dir",        "divmod",      "enumerate",   "eval",      "exec",
      "filter",    "float",      "format",     "frozenset",   "getattr",     "globals",   "hasattr",
      "hash",      "help",       "hex",        "id",          "input",       "int",       "isinstance",
      "issubclass", "iter",      "len",        "list",        "locals",      "map",       "max",
      "memoryview", "min",       "next",       "object",      "oct",         "open",      "ord",
      "pow",       "print",      "property",   "range",       "repr",        "reversed",  "round",
      "set",       "setattr",    "slice",      "sorted",      "staticmethod", "str",      "sum",
      "super",     "tuple",      "type",       "vars",        "zip",         "__import__"};
  return builtins.count(name) != 0;
}

std::optional<ResolvedImport> PythonAdapter::resolve_import(const ImportBinding& import, const std::string& importer,
                                                            const PathIndex& files) const {
  std::size_t dots = 0;
  while (dots < import.module.size() && import.module[dots] == '.') ++dots;
  std::string rest = import.module.substr(dots);
  std::replace(rest.begin(), rest.end(), '.', '/');

  // Candidate module paths (without extension), most specific first.
  auto lookup = [&](const std::string& mod) -> std::optional<std::string> {
    if (mod.empty()) return std::nullopt;
    for (const std::string& cand : {mod + ".py", mod + "/__init__.py"}) {
      if (dots > 0) {
        if (files.contains(cand)) return cand;
        continue;
      }
      if (files.contains(cand)) return cand;
      if (files.contains("src/" + cand)) return "src/" + cand;
    }
    if (dots > 0) return std::nullopt;
    for (const std::string& cand : {mod + ".py", mod + "/__init__.py"}) {
      const auto hits = files.with_suffix(cand);
      if (!hits.empty()) return hits.front();
    }
    return std::nullopt;
  };

  std::string base;
  if (dots > 0) {
    std::string dir(dirname_of(importer));
    for (std::size_t up = 1; up < dots; ++up) {
      if (dir.empty()) return std::nullopt;
      dir = std::string(dirname_of(dir));
    }
    base = dir;
  }
  auto join = [&](const std::string& a, const std::string& b) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    return a + "/" + b;
  };
  const std::string module_path = join(base, rest);

  if (!import.symbol.empty() && import.symbol != "*") {
    std::string sym = import.symbol;
    std::replace(sym.begin(), sym.end(), '.', '/');
    if (auto p = lookup(join(module_path, sym))) return ResolvedImport{*p, true};
  }
  if (auto p = lookup(module_path)) return ResolvedImport{*p, import.symbol.empty() || import.symbol == "*"};
  return std::nullopt;
}

}  // namespace repograph

#include "lacunaria/io.hpp"

#include <cctype>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace lac {

namespace {

bool is_letter_literal(const std::string& text) {
  if (text.empty()) return false;
  for (char c : text)
    if (c != 'a' && c != 'b' && c != 'A' && c != 'B') return false;
  return true;
}

Letter letter_of(char c) {
  switch (c) {
    case 'a': return 1;
    case 'b': return 2;
    case 'A': return -1;
    case 'B': return -2;
    default: return 0;
  }
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

Word parse_word_literal(const std::string& text) {
  std::string t = trim(text);
  if (t == "e") return Word();
  if (t.empty()) throw ParseError("empty word literal", 0, 1);
  if (is_letter_literal(t)) {
    std::vector<Letter> letters;
    letters.reserve(t.size());
    for (char c : t) letters.push_back(letter_of(c));
    return Word::reduce(letters);
  }
  std::vector<Letter> letters;
  std::size_t pos = 0;
  while (pos < t.size()) {
    while (pos < t.size() && std::isspace(static_cast<unsigned char>(t[pos])))
      ++pos;
    if (pos >= t.size()) break;
    std::size_t start = pos;
    while (pos < t.size() && !std::isspace(static_cast<unsigned char>(t[pos])))
      ++pos;
    std::string token = t.substr(start, pos - start);
    try {
      std::size_t used = 0;
      long v = std::stol(token, &used);
      if (used != token.size())
        throw ParseError("malformed integer in word literal", 0, start + 1);
      if (v == 0)
        throw ParseError("generator index 0 is not allowed", 0, start + 1);
      if (v > std::numeric_limits<Letter>::max() ||
          v < std::numeric_limits<Letter>::min())
        throw ParseError("generator index out of range", 0, start + 1);
      letters.push_back(static_cast<Letter>(v));
    } catch (const std::invalid_argument&) {
      throw ParseError("malformed integer in word literal", 0, start + 1);
    } catch (const std::out_of_range&) {
      throw ParseError("generator index out of range", 0, start + 1);
    }
  }
  return Word::reduce(letters);
}

std::string format_word_literal(const Word& w) {
  if (w.is_identity()) return "e";
  std::string out;
  for (std::size_t i = 0; i < w.letters().size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(w.letters()[i]);
  }
  return out;
}

namespace {

template <typename Fn>
void for_each_content_line(std::istream& in, Fn&& fn) {
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    fn(t, lineno);
  }
}

[[noreturn]] void rethrow_with_line(const ParseError& e, std::size_t line) {
  throw ParseError(e.what(), line, e.column);
}

}  // namespace

std::vector<Word> read_word_list(std::istream& in) {
  std::vector<Word> words;
  for_each_content_line(in, [&](const std::string& t, std::size_t lineno) {
    try {
      words.push_back(parse_word_literal(t));
    } catch (const ParseError& e) {
      rethrow_with_line(e, lineno);
    }
  });
  return words;
}

std::vector<Word> read_word_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open word list: " + path);
  return read_word_list(in);
}

LengthFunction read_psi_table(std::istream& in, std::string name) {
  std::map<Word, double, CanonicalLess> table;
  for_each_content_line(in, [&](const std::string& t, std::size_t lineno) {
    std::size_t tab = t.find('\t');
    if (tab == std::string::npos)
      throw ParseError("psi table lines are '<word literal>\\t<value>'",
                       lineno, t.size() + 1);
    try {
      Word w = parse_word_literal(t.substr(0, tab));
      double v = std::stod(t.substr(tab + 1));
      if (v < 0.0)
        throw ParseError("psi values must be nonnegative", lineno, tab + 2);
      table[w] = v;
    } catch (const ParseError& e) {
      rethrow_with_line(e, lineno);
    } catch (const std::exception&) {
      throw ParseError("malformed psi value", lineno, tab + 2);
    }
  });
  return table_length_function(std::move(table), std::move(name));
}

LengthFunction read_psi_table_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open psi table: " + path);
  return read_psi_table(in, "table:" + path);
}

std::map<int, int> read_phi_table(std::istream& in) {
  std::map<int, int> phi;
  for_each_content_line(in, [&](const std::string& t, std::size_t lineno) {
    std::istringstream row(t);
    int k = 0, v = 0;
    if (!(row >> k >> v))
      throw ParseError("phi table lines are 'k\\tphi(k)'", lineno, 1);
    if (k <= 0 || v <= 0)
      throw ParseError("phi table uses positive indices", lineno, 1);
    phi[k] = v;
  });
  return phi;
}

std::map<int, int> read_phi_table_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open phi table: " + path);
  return read_phi_table(in);
}

GroupAlgebraElement read_element_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("element JSON: ") + e.what(), 0, e.byte + 1);
  }
  if (!doc.is_array()) throw Error("element JSON must be an array of terms");
  int dim = 0;
  GroupAlgebraElement out(1);
  bool first = true;
  for (const auto& term : doc) {
    if (!term.contains("word"))
      throw Error("element term is missing the word field");
    Word w = parse_word_literal(term.at("word").get<std::string>());
    CMat c;
    if (term.contains("coeff")) {
      const auto& rows = term.at("coeff");
      int d = static_cast<int>(rows.size());
      if (d < 1 || d > kMaxCoeffDim)
        throw Error("coefficient dimension must be in [1, 8]");
      c = CMat(d);
      for (int i = 0; i < d; ++i) {
        if (static_cast<int>(rows[i].size()) != d)
          throw Error("coefficient matrix must be square");
        for (int j = 0; j < d; ++j) {
          const auto& entry = rows[i][j];
          if (!entry.is_array() || entry.size() != 2)
            throw Error("matrix entries are [re, im] pairs");
          c.at(i, j) = cplx(entry[0].get<double>(), entry[1].get<double>());
        }
      }
    } else {
      double re = term.value("re", 0.0);
      double im = term.value("im", 0.0);
      c = CMat(1);
      c.at(0, 0) = cplx(re, im);
    }
    if (first) {
      dim = c.dim();
      out = GroupAlgebraElement(dim);
      first = false;
    } else if (c.dim() != dim) {
      throw Error("element mixes coefficient dimensions");
    }
    out.add_term(w, c);
  }
  return out;
}

GroupAlgebraElement read_element_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open element file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return read_element_json(buf.str());
}

std::string write_element_json(const GroupAlgebraElement& x) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [w, c] : x.terms()) {
    nlohmann::json term;
    term["word"] = format_word_literal(w);
    if (x.dim() == 1) {
      term["re"] = c.at(0, 0).real();
      term["im"] = c.at(0, 0).imag();
    } else {
      nlohmann::json rows = nlohmann::json::array();
      for (int i = 0; i < x.dim(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int j = 0; j < x.dim(); ++j)
          row.push_back({c.at(i, j).real(), c.at(i, j).imag()});
        rows.push_back(row);
      }
      term["coeff"] = rows;
    }
    arr.push_back(term);
  }
  return arr.dump(2);
}

}  // namespace lac

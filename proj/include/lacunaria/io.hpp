#pragma once

// Text formats: word literals ("1 2 -1", "e", rank-2 letters abAB), word-list
// and psi-table files, the JSON element format, and phi injection tables.

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "lacunaria/algebra.hpp"
#include "lacunaria/lengths.hpp"
#include "lacunaria/word.hpp"

namespace lac {

// Space-separated nonzero decimal integers; "e" is the identity. A literal
// consisting only of the letters a, b, A, B is read as a = 1, b = 2,
// A = -1, B = -2. The result is reduced. Column of the offending character
// is reported on errors (line filled in by file readers).
Word parse_word_literal(const std::string& text);

// Canonical literal: "e" for the identity, else space-separated integers.
std::string format_word_literal(const Word& w);

// One word literal per line; blank lines and '#' comments skipped.
std::vector<Word> read_word_list(std::istream& in);
std::vector<Word> read_word_list_file(const std::string& path);

// Lines "<word literal>\t<decimal>".
LengthFunction read_psi_table(std::istream& in, std::string name);
LengthFunction read_psi_table_file(const std::string& path);

// Lines "k\tphi(k)" with positive k.
std::map<int, int> read_phi_table(std::istream& in);
std::map<int, int> read_phi_table_file(const std::string& path);

// JSON array of {"word": "<literal>", "coeff": [[[re,im],...],...]} or the
// scalar shorthand {"word": ..., "re": ..., "im": ...}; dim inferred from
// the first entry and validated against the rest.
GroupAlgebraElement read_element_json(const std::string& text);
GroupAlgebraElement read_element_file(const std::string& path);
std::string write_element_json(const GroupAlgebraElement& x);

}  // namespace lac

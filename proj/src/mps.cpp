#include "potred/mps.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "potred/errors.hpp"

namespace potred {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> tokens;
  std::string tok;
  while (ss >> tok) tokens.push_back(tok);
  return tokens;
}

double parse_number(const std::string& tok, int line_no) {
  char* end = nullptr;
  double v = std::strtod(tok.c_str(), &end);
  if (end == nullptr || *end != '\0' || end == tok.c_str())
    throw ParseError(line_no, "non-numeric field '" + tok + "'");
  return v;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

enum class Section { start, name, rows, columns, rhs, endata };

}  // namespace

LinearProgram parse_mps(std::istream& in) {
  enum class RowType { objective, eq, le, ge };
  struct Row {
    RowType type;
    int index;  // constraint index, -1 for the objective
  };

  std::map<std::string, Row> rows;
  std::vector<std::string> row_order;       // constraint rows in order
  std::vector<RowType> row_types;
  std::map<std::string, int> columns;       // name -> column index
  std::vector<std::map<int, double>> col_entries;  // per column: row -> value
  std::vector<double> obj_entries;          // per column
  std::string obj_row_name;
  std::string name = "unnamed";
  std::vector<double> rhs_values;
  std::string current_column;

  Section section = Section::start;
  std::string line;
  int line_no = 0;
  bool saw_endata = false;

  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '*') continue;
    auto tokens = tokenize(line);
    if (tokens.empty()) continue;

    bool is_header = line[0] != ' ' && line[0] != '\t';
    if (is_header) {
      const std::string& kw = tokens[0];
      if (kw == "NAME") {
        if (section != Section::start)
          throw ParseError(line_no, "NAME section out of order");
        if (tokens.size() > 1) name = tokens[1];
        section = Section::name;
      } else if (kw == "ROWS") {
        if (section != Section::start && section != Section::name)
          throw ParseError(line_no, "ROWS section out of order");
        section = Section::rows;
      } else if (kw == "COLUMNS") {
        if (section != Section::rows)
          throw ParseError(line_no, "COLUMNS section out of order");
        if (row_order.empty())
          throw ParseError(line_no, "empty ROWS section");
        section = Section::columns;
      } else if (kw == "RHS") {
        if (section != Section::columns)
          throw ParseError(line_no, "RHS section out of order");
        section = Section::rhs;
        rhs_values.assign(row_order.size(), 0.0);
      } else if (kw == "ENDATA") {
        if (section != Section::columns && section != Section::rhs)
          throw ParseError(line_no, "ENDATA out of order");
        if (rhs_values.empty()) rhs_values.assign(row_order.size(), 0.0);
        saw_endata = true;
        break;
      } else if (kw == "RANGES" || kw == "BOUNDS") {
        throw ParseError(line_no, kw + " section not supported (standard form only)");
      } else {
        throw ParseError(line_no, "unknown section '" + kw + "'");
      }
      continue;
    }

    switch (section) {
      case Section::rows: {
        if (tokens.size() != 2)
          throw ParseError(line_no, "ROWS line must be '<type> <name>'");
        const std::string& type = tokens[0];
        const std::string& rname = tokens[1];
        if (rows.count(rname))
          throw ParseError(line_no, "duplicate row name '" + rname + "'");
        if (type == "N") {
          if (!obj_row_name.empty())
            throw ParseError(line_no, "multiple objective (N) rows");
          obj_row_name = rname;
          rows[rname] = {RowType::objective, -1};
        } else if (type == "E" || type == "L" || type == "G") {
          RowType rt = type == "E" ? RowType::eq
                       : type == "L" ? RowType::le
                                     : RowType::ge;
          rows[rname] = {rt, static_cast<int>(row_order.size())};
          row_order.push_back(rname);
          row_types.push_back(rt);
        } else {
          throw ParseError(line_no, "unknown row type '" + type + "'");
        }
        break;
      }
      case Section::columns: {
        if (tokens.size() != 3)
          throw ParseError(line_no,
                           "COLUMNS line must be '<col> <row> <value>'");
        const std::string& cname = tokens[0];
        const std::string& rname = tokens[1];
        double value = parse_number(tokens[2], line_no);
        auto it = rows.find(rname);
        if (it == rows.end())
          throw ParseError(line_no, "undeclared row '" + rname + "'");
        int col;
        auto cit = columns.find(cname);
        if (cit == columns.end()) {
          col = static_cast<int>(columns.size());
          columns[cname] = col;
          col_entries.emplace_back();
          obj_entries.push_back(0.0);
          current_column = cname;
        } else {
          if (cname != current_column)
            throw ParseError(line_no, "duplicate column name '" + cname +
                                          "' (columns must be contiguous)");
          col = cit->second;
        }
        if (it->second.type == RowType::objective) {
          obj_entries[col] = value;
        } else {
          if (!col_entries[col].emplace(it->second.index, value).second)
            throw ParseError(line_no, "duplicate entry for row '" + rname +
                                          "' in column '" + cname + "'");
        }
        break;
      }
      case Section::rhs: {
        if (tokens.size() != 3)
          throw ParseError(line_no, "RHS line must be '<set> <row> <value>'");
        const std::string& rname = tokens[1];
        double value = parse_number(tokens[2], line_no);
        auto it = rows.find(rname);
        if (it == rows.end())
          throw ParseError(line_no, "undeclared row '" + rname + "'");
        if (it->second.type != RowType::objective)
          rhs_values[it->second.index] = value;
        break;
      }
      default:
        throw ParseError(line_no, "data line outside of a section");
    }
  }

  if (!saw_endata) throw ParseError(line_no, "missing ENDATA");
  if (row_order.empty()) throw ParseError(line_no, "empty ROWS section");

  int m = static_cast<int>(row_order.size());
  int n_struct = static_cast<int>(col_entries.size());
  std::vector<Triplet> triplets;
  for (int j = 0; j < n_struct; ++j)
    for (auto& [i, v] : col_entries[j])
      if (v != 0.0) triplets.push_back({i, j, v});

  // slack columns for inequality rows
  int n = n_struct;
  std::vector<double> c(obj_entries);
  for (int i = 0; i < m; ++i) {
    if (row_types[i] == RowType::le) {
      triplets.push_back({i, n, 1.0});
      c.push_back(0.0);
      ++n;
    } else if (row_types[i] == RowType::ge) {
      triplets.push_back({i, n, -1.0});
      c.push_back(0.0);
      ++n;
    }
  }

  LinearProgram lp;
  lp.A = SparseMatrix::from_triplets(m, n, std::move(triplets));
  lp.b = rhs_values;
  lp.c = std::move(c);
  lp.name = name;
  return lp;
}

LinearProgram parse_mps_string(const std::string& text) {
  std::istringstream ss(text);
  return parse_mps(ss);
}

std::string write_mps(const LinearProgram& lp) {
  std::ostringstream out;
  out << "NAME " << (lp.name.empty() ? "unnamed" : lp.name) << "\n";
  out << "ROWS\n";
  out << " N OBJ\n";
  for (int i = 0; i < lp.num_rows(); ++i) out << " E R" << i + 1 << "\n";
  out << "COLUMNS\n";
  const auto& col_ptr = lp.A.col_ptr();
  const auto& row_idx = lp.A.row_idx();
  const auto& values = lp.A.values();
  for (int j = 0; j < lp.num_cols(); ++j) {
    // objective entry always written so empty columns survive a round trip
    out << " X" << j + 1 << " OBJ " << format_double(lp.c[j]) << "\n";
    for (int k = col_ptr[j]; k < col_ptr[j + 1]; ++k)
      out << " X" << j + 1 << " R" << row_idx[k] + 1 << " "
          << format_double(values[k]) << "\n";
  }
  out << "RHS\n";
  for (int i = 0; i < lp.num_rows(); ++i)
    if (lp.b[i] != 0.0)
      out << " RHS R" << i + 1 << " " << format_double(lp.b[i]) << "\n";
  out << "ENDATA\n";
  return out.str();
}

LinearProgram parse_triplet(std::istream& in) {
  int m, n, nnz;
  if (!(in >> m >> n >> nnz)) throw ParseError(1, "bad triplet header");
  std::vector<Triplet> triplets;
  triplets.reserve(nnz);
  for (int k = 0; k < nnz; ++k) {
    int i, j;
    double v;
    if (!(in >> i >> j >> v))
      throw ParseError(k + 2, "bad triplet entry");
    triplets.push_back({i, j, v});
  }
  LinearProgram lp;
  lp.b.resize(m);
  lp.c.resize(n);
  for (int i = 0; i < m; ++i)
    if (!(in >> lp.b[i])) throw ParseError(nnz + 2, "missing b entries");
  for (int j = 0; j < n; ++j)
    if (!(in >> lp.c[j])) throw ParseError(nnz + 2, "missing c entries");
  lp.A = SparseMatrix::from_triplets(m, n, std::move(triplets));
  lp.name = "triplet";
  return lp;
}

LinearProgram parse_triplet_string(const std::string& text) {
  std::istringstream ss(text);
  return parse_triplet(ss);
}

std::string write_triplet(const LinearProgram& lp) {
  std::ostringstream out;
  auto triplets = lp.A.to_triplets();
  out << lp.num_rows() << " " << lp.num_cols() << " " << triplets.size()
      << "\n";
  for (const Triplet& t : triplets)
    out << t.row << " " << t.col << " " << format_double(t.value) << "\n";
  for (int i = 0; i < lp.num_rows(); ++i)
    out << format_double(lp.b[i]) << (i + 1 == lp.num_rows() ? "\n" : " ");
  for (int j = 0; j < lp.num_cols(); ++j)
    out << format_double(lp.c[j]) << (j + 1 == lp.num_cols() ? "\n" : " ");
  return out.str();
}

LinearProgram load_lp_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open '" + path + "'");
  if (path.size() >= 4 && path.substr(path.size() - 4) == ".mps")
    return parse_mps(in);
  return parse_triplet(in);
}

}  // namespace potred

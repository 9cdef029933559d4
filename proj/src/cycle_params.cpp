#include "tbraid/cycle_params.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace tbraid {

void DecoratedCycleGraph::validate() const {
  if (m < 1) throw std::invalid_argument("cycle graph: m must be at least 1");
  if (a.size() != b.size() + 1)
    throw std::invalid_argument("cycle graph: need n+1 values a_0..a_n for n values b_1..b_n");
  for (int v : a)
    if (v < 1) throw std::invalid_argument("cycle graph: every a_k must be positive");
  for (int v : b)
    if (v < 1) throw std::invalid_argument("cycle graph: every b_k must be positive");
}

std::string DecoratedCycleGraph::to_string() const {
  std::ostringstream out;
  out << '(' << m << ';';
  for (std::size_t i = 0; i < a.size(); ++i) out << (i ? "," : "") << a[i];
  out << ';';
  for (std::size_t i = 0; i < b.size(); ++i) out << (i ? "," : "") << b[i];
  out << ')';
  return out.str();
}

namespace {

std::vector<int> parse_list(const std::string& field) {
  std::vector<int> out;
  if (field.empty()) return out;
  std::stringstream in(field);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("cycle parameters: bad integer '" + item + "'");
    }
    if (used != item.size()) throw std::invalid_argument("cycle parameters: bad integer '" + item + "'");
    out.push_back(v);
  }
  if (field.back() == ',') throw std::invalid_argument("cycle parameters: trailing comma");
  return out;
}

}  // namespace

DecoratedCycleGraph parse_cycle_params(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.size() < 2 || s.front() != '(' || s.back() != ')')
    throw std::invalid_argument("cycle parameters: expected (m;a0,..,an;b1,..,bn)");
  s = s.substr(1, s.size() - 2);
  std::vector<std::string> fields;
  std::stringstream in(s);
  std::string f;
  while (std::getline(in, f, ';')) fields.push_back(f);
  if (!s.empty() && s.back() == ';') fields.emplace_back();
  if (fields.size() != 3) throw std::invalid_argument("cycle parameters: expected three ';'-separated fields");
  const auto m = parse_list(fields[0]);
  if (m.size() != 1) throw std::invalid_argument("cycle parameters: m must be a single integer");
  DecoratedCycleGraph d{m[0], parse_list(fields[1]), parse_list(fields[2])};
  d.validate();
  return d;
}

}  // namespace tbraid

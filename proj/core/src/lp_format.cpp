#include <charconv>
#include <cmath>
#include <cstdlib>
#include <map>
#include <sstream>
#include <string>

#include "sfcaas/errors.hpp"
#include "sfcaas/ilp.hpp"

namespace sfcaas {

namespace {

// Shortest round-trip decimal form; parsing it back with strtod recovers the
// exact double, so export -> parse -> export is byte-stable.
std::string fmt(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

// Emits "<coeff> <name>" for the first term and "+|- <coeff> <name>" after;
// the caller provides the separating space.
void append_term(std::string& out, bool first, double coeff, const std::string& name) {
  bool negative = std::signbit(coeff) && coeff != 0.0;
  if (!first) out += negative ? "- " : "+ ";
  else if (negative) out += "- ";
  out += fmt(std::fabs(coeff));
  out += " ";
  out += name;
}

const char* sense_text(Sense s) {
  switch (s) {
    case Sense::Le: return "<=";
    case Sense::Ge: return ">=";
    default: return "=";
  }
}

struct Tokenizer {
  std::istringstream in;
  explicit Tokenizer(const std::string& s) : in(s) {}
  bool next(std::string& tok) { return static_cast<bool>(in >> tok); }
};

double parse_number(const std::string& tok) {
  double v = 0.0;
  auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
    throw ParseError("bad number in model text: " + tok);
  return v;
}

}  // namespace

std::string export_model(const IlpModel& model) {
  std::string out;
  out += "\\ chain embedding model (binary)\n";
  out += "Minimize\n";
  out += " obj:";
  for (std::size_t v = 0; v < model.vars.size(); ++v) {
    if (v > 0 && v % 6 == 0) out += "\n   ";
    out += " ";
    append_term(out, v == 0, model.vars[v].objective, model.vars[v].name);
  }
  out += "\n";
  out += "Subject To\n";
  for (const IlpConstraint& c : model.constraints) {
    out += " " + c.name + ":";
    bool first = true;
    for (const IlpTerm& t : c.terms) {
      out += " ";
      append_term(out, first, t.coeff, model.vars[t.var].name);
      first = false;
    }
    out += std::string(" ") + sense_text(c.sense) + " " + fmt(c.rhs) + "\n";
  }
  out += "Binary\n";
  for (const IlpVariable& v : model.vars) out += " " + v.name + "\n";
  out += "End\n";
  return out;
}

IlpModel parse_model(const std::string& text) {
  IlpModel model;
  std::map<std::string, int> index;

  std::istringstream lines(text);
  std::string line;
  enum { Preamble, Objective, Constraints, Binaries, Done } section = Preamble;
  std::string obj_text;
  std::vector<std::string> constraint_lines;
  std::vector<std::string> binary_names;

  while (std::getline(lines, line)) {
    if (!line.empty() && line[0] == '\\') continue;
    if (line == "Minimize") {
      section = Objective;
      continue;
    }
    if (line == "Subject To") {
      section = Constraints;
      continue;
    }
    if (line == "Binary") {
      section = Binaries;
      continue;
    }
    if (line == "End") {
      section = Done;
      continue;
    }
    switch (section) {
      case Objective:
        obj_text += " " + line;
        break;
      case Constraints:
        constraint_lines.push_back(line);
        break;
      case Binaries: {
        std::string name = line;
        name.erase(0, name.find_first_not_of(' '));
        binary_names.push_back(name);
        break;
      }
      case Preamble:
      case Done:
        if (line.find_first_not_of(" \t") != std::string::npos)
          throw ParseError("unexpected text outside sections: " + line);
        break;
    }
  }
  if (section != Done) throw ParseError("model text has no End marker");

  {
    Tokenizer tok(obj_text);
    std::string t;
    if (!tok.next(t) || t != "obj:") throw ParseError("objective must start with obj:");
    double sign = 1.0;
    while (tok.next(t)) {
      if (t == "+") {
        sign = 1.0;
        continue;
      }
      if (t == "-") {
        sign = -1.0;
        continue;
      }
      std::string name;
      if (!tok.next(name)) throw ParseError("dangling coefficient in objective");
      IlpVariable v;
      v.name = name;
      v.objective = sign * parse_number(t);
      if (index.count(name)) throw ParseError("variable repeated in objective: " + name);
      index[name] = static_cast<int>(model.vars.size());
      model.vars.push_back(v);
      sign = 1.0;
    }
  }
  for (const std::string& name : binary_names)
    if (!index.count(name))
      throw ParseError("binary section names unknown variable " + name);

  for (const std::string& cl : constraint_lines) {
    Tokenizer tok(cl);
    std::string t;
    if (!tok.next(t) || t.back() != ':')
      throw ParseError("constraint without name: " + cl);
    IlpConstraint c;
    c.name = t.substr(0, t.size() - 1);
    double sign = 1.0;
    bool saw_sense = false;
    while (tok.next(t)) {
      if (t == "+") {
        sign = 1.0;
        continue;
      }
      if (t == "-") {
        sign = -1.0;
        continue;
      }
      if (t == "<=" || t == ">=" || t == "=") {
        c.sense = t == "<=" ? Sense::Le : (t == ">=" ? Sense::Ge : Sense::Eq);
        std::string rhs;
        if (!tok.next(rhs)) throw ParseError("constraint missing rhs: " + cl);
        c.rhs = parse_number(rhs);
        saw_sense = true;
        break;
      }
      std::string name;
      if (!tok.next(name)) throw ParseError("dangling coefficient in " + cl);
      auto it = index.find(name);
      if (it == index.end())
        throw ParseError("constraint references unknown variable " + name);
      c.terms.push_back({it->second, sign * parse_number(t)});
      sign = 1.0;
    }
    if (!saw_sense) throw ParseError("constraint missing comparison: " + cl);
    model.constraints.push_back(std::move(c));
  }

  // Recover the layout dimensions from the variable names so that x_index
  // and y_index keep working on reconstructed models.
  int y_vars = 0;
  for (const IlpVariable& v : model.vars) {
    if (v.name.size() < 2 || v.name[1] != '_') continue;
    if (v.name[0] == 'x') {
      std::size_t us = v.name.find('_', 2);
      if (us == std::string::npos) continue;
      model.n_instances = std::max(model.n_instances,
                                   1 + std::atoi(v.name.c_str() + 2));
      model.n_pops =
          std::max(model.n_pops, 1 + std::atoi(v.name.c_str() + us + 1));
    } else if (v.name[0] == 'y') {
      model.n_links = std::max(model.n_links, 1 + std::atoi(v.name.c_str() + 2));
      ++y_vars;
    }
  }
  if (model.n_links > 0) model.n_edges = y_vars / (2 * model.n_links);
  return model;
}

}  // namespace sfcaas

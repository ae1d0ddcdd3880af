#include "pseudopass/io.hpp"

#include <cstdlib>
#include <sstream>

namespace pseudopass {

using nlohmann::json;

namespace {

json parse_json(const std::string& text, const char* what) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ParseError(std::string(what) + ": malformed JSON");
  return j;
}

Complex complex_from_json(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ParseError(std::string(what) + ": expected [re, im]");
  return Complex{j[0].get<double>(), j[1].get<double>()};
}

double number_field(const json& j, const char* key, const char* what) {
  if (!j.contains(key) || !j[key].is_number())
    throw ParseError(std::string(what) + ": missing numeric field '" + key + "'");
  return j[key].get<double>();
}

std::vector<double> weight_vector(const json& j, const char* key, const char* what) {
  if (!j.contains(key) || !j[key].is_array())
    throw ParseError(std::string(what) + ": missing array field '" + key + "'");
  std::vector<double> out;
  for (const auto& v : j[key]) {
    if (!v.is_number()) throw ParseError(std::string(what) + ": non-numeric entry in '" + key + "'");
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Kernel kernel_from_json(const std::string& text) {
  json j = parse_json(text, "kernel");
  if (!j.is_object()) throw ParseError("kernel: expected a JSON object");
  std::vector<DiracTerm> diracs;
  std::vector<ExpPolyTerm> regs;
  if (j.contains("dirac")) {
    if (!j["dirac"].is_array()) throw ParseError("kernel: 'dirac' must be an array");
    for (const auto& d : j["dirac"]) {
      DiracTerm term;
      if (!d.contains("coeff")) throw ParseError("kernel: dirac term without 'coeff'");
      term.coeff = complex_from_json(d["coeff"], "kernel dirac coeff");
      term.location = number_field(d, "loc", "kernel dirac term");
      const double order = number_field(d, "order", "kernel dirac term");
      if (order != static_cast<int>(order))
        throw ParseError("kernel: dirac order must be an integer");
      term.order = static_cast<int>(order);
      diracs.push_back(term);
    }
  }
  if (j.contains("regular")) {
    if (!j["regular"].is_array()) throw ParseError("kernel: 'regular' must be an array");
    for (const auto& r : j["regular"]) {
      ExpPolyTerm term;
      if (!r.contains("poly") || !r["poly"].is_array())
        throw ParseError("kernel: regular term without 'poly' array");
      for (const auto& c : r["poly"])
        term.poly.push_back(complex_from_json(c, "kernel poly coefficient"));
      if (!r.contains("rate")) throw ParseError("kernel: regular term without 'rate'");
      term.rate = complex_from_json(r["rate"], "kernel rate");
      term.start = number_field(r, "start", "kernel regular term");
      regs.push_back(std::move(term));
    }
  }
  return make_kernel(std::move(diracs), std::move(regs));
}

json kernel_to_json(const Kernel& k) {
  json diracs = json::array();
  for (const auto& d : k.dirac)
    diracs.push_back(
        {{"coeff", complex_to_json(d.coeff)}, {"loc", d.location}, {"order", d.order}});
  json regs = json::array();
  for (const auto& r : k.regular) {
    json poly = json::array();
    for (Complex c : r.poly) poly.push_back(complex_to_json(c));
    regs.push_back(
        {{"poly", poly}, {"rate", complex_to_json(r.rate)}, {"start", r.start}});
  }
  return json{{"dirac", diracs}, {"regular", regs}};
}

std::string kernel_digest(const Kernel& k) {
  const std::string canonical = kernel_to_json(k).dump();
  return hex64(fnv1a(canonical.data(), canonical.size()));
}

Params params_from_json(const std::string& text) {
  json j = parse_json(text, "params");
  if (!j.is_object()) throw ParseError("params: expected a JSON object");
  if (!j.contains("kind") || !j["kind"].is_string())
    throw ParseError("params: missing 'kind'");
  const std::string kind = j["kind"].get<std::string>();

  auto check_n = [&](size_t len) {
    if (j.contains("N")) {
      const double n = number_field(j, "N", "params");
      if (n != static_cast<int>(n) || static_cast<size_t>(n) + 1 != len)
        throw ValidationError("params: vectors must have exactly N+1 entries");
    }
  };

  if (kind == "admittance") {
    AdmittanceParams p{weight_vector(j, "c", "params"), weight_vector(j, "d", "params")};
    if (p.c.size() != p.d.size())
      throw ValidationError("params: c and d must have equal length");
    check_n(p.c.size());
    validate(p);
    return p;
  }
  if (kind == "scattering") {
    ScatteringParams p{weight_vector(j, "F", "params"), weight_vector(j, "G", "params")};
    if (p.F.size() != p.G.size())
      throw ValidationError("params: F and G must have equal length");
    check_n(p.F.size());
    validate(p);
    return p;
  }
  throw ParseError("params: kind must be 'admittance' or 'scattering'");
}

json params_to_json(const Params& p) {
  if (std::holds_alternative<AdmittanceParams>(p)) {
    const auto& a = std::get<AdmittanceParams>(p);
    return json{{"kind", "admittance"}, {"N", a.order()}, {"c", a.c}, {"d", a.d}};
  }
  const auto& s = std::get<ScatteringParams>(p);
  return json{{"kind", "scattering"}, {"N", s.order()}, {"F", s.F}, {"G", s.G}};
}

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

double parse_number(const std::string& text, size_t line_no) {
  const char* begin = text.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || (end && *end != '\0' && *end != '\r'))
    throw ParseError("samples: bad number '" + text + "' on line " +
                     std::to_string(line_no));
  return v;
}

}  // namespace

std::vector<TransferSample> samples_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  size_t line_no = 0;
  std::vector<TransferSample> samples;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!header_seen) {
      if (line != "s_re,s_im,w_re,w_im")
        throw ParseError("samples: first line must be 's_re,s_im,w_re,w_im'");
      header_seen = true;
      continue;
    }
    auto fields = split(line, ',');
    if (fields.size() != 4)
      throw ParseError("samples: expected 4 fields on line " + std::to_string(line_no));
    TransferSample smp;
    smp.s = Complex{parse_number(fields[0], line_no), parse_number(fields[1], line_no)};
    smp.w = Complex{parse_number(fields[2], line_no), parse_number(fields[3], line_no)};
    if (!finite(smp.s) || !finite(smp.w))
      throw ValidationError("samples: non-finite sample on line " + std::to_string(line_no));
    samples.push_back(smp);
  }
  if (!header_seen) throw ParseError("samples: empty file");
  return samples;
}

std::string samples_to_csv(std::span<const TransferSample> samples) {
  std::string out = "s_re,s_im,w_re,w_im\n";
  for (const auto& smp : samples) {
    out += format_double(smp.s.real()) + "," + format_double(smp.s.imag()) + "," +
           format_double(smp.w.real()) + "," + format_double(smp.w.imag()) + "\n";
  }
  return out;
}

std::string sweep_to_csv(const SweepResult& sr) {
  std::string out = "s_re,s_im,w_re,w_im,residual\n";
  for (const auto& pt : sr.points) {
    if (!pt.ok) continue;
    out += format_double(pt.s.real()) + "," + format_double(pt.s.imag()) + "," +
           format_double(pt.w.real()) + "," + format_double(pt.w.imag()) + "," +
           format_double(pt.residual) + "\n";
  }
  return out;
}

json report_envelope(const std::string& subcommand, json inputs, json results,
                     json warnings) {
  return json{{"tool", kToolName},
              {"version", kToolVersion},
              {"subcommand", subcommand},
              {"inputs", std::move(inputs)},
              {"results", std::move(results)},
              {"warnings", std::move(warnings)}};
}

std::string dump_report(const json& j) { return j.dump(2) + "\n"; }

}  // namespace pseudopass

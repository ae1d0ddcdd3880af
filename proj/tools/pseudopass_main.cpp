// Command-line front end; all computation happens behind the C API.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pseudopass.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;   // run failed (numeric/internal)
constexpr int kExitInput = 2;   // bad inputs

[[noreturn]] void fail_input(const std::string& message) {
  std::cerr << "error: " << message << "\n";
  std::exit(kExitInput);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail_input("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail_input("cannot write " + path);
  out << content;
}

// Writes to the file when a path was given, otherwise to stdout.
void emit(const std::string& path, const std::string& content) {
  if (path.empty())
    std::cout << content;
  else
    write_file(path, content);
}

int status_to_exit(pp_status st) {
  switch (st) {
    case PP_OK:
      return kExitOk;
    case PP_ERR_PARSE:
    case PP_ERR_INVALID:
      return kExitInput;
    default:
      return kExitError;
  }
}

// Claims a C-API string and frees it.
std::string take(char* s) {
  if (!s) return {};
  std::string out = s;
  pp_string_free(s);
  return out;
}

void check(pp_status st) {
  if (st == PP_OK) return;
  std::cerr << "error: " << pp_last_error() << "\n";
  std::exit(status_to_exit(st));
}

std::string json_escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out.push_back('\\');
    out.push_back(ch);
  }
  return out;
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string grid_json(const std::string& grid_flag) {
  std::vector<double> vals;
  std::stringstream ss(grid_flag);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      vals.push_back(std::stod(item));
    } catch (...) {
      fail_input("--grid expects re0,re1,nre,im0,im1,nim");
    }
  }
  if (vals.size() != 6) fail_input("--grid expects re0,re1,nre,im0,im1,nim");
  return "\"grid\":{\"re_min\":" + num(vals[0]) + ",\"re_max\":" + num(vals[1]) +
         ",\"n_re\":" + num(vals[2]) + ",\"im_min\":" + num(vals[3]) +
         ",\"im_max\":" + num(vals[4]) + ",\"n_im\":" + num(vals[5]) + "}";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pseudo-passivity verification, region classification and certification"};
  app.require_subcommand(1);

  // verify
  auto* verify = app.add_subcommand("verify", "time-domain falsification + causality check");
  std::string v_kernel, v_params, v_out;
  double v_tol = 1e-7;
  int v_horizons = 17;
  verify->add_option("--kernel", v_kernel, "kernel spec JSON file")->required();
  verify->add_option("--params", v_params, "parameter JSON file")->required();
  verify->add_option("--tol", v_tol, "falsification tolerance");
  verify->add_option("--horizons", v_horizons, "horizon grid points per probe");
  verify->add_option("--out", v_out, "report file (default stdout)");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "transfer-function range residuals on a grid");
  std::string s_kernel, s_params, s_grid, s_out = "sweep.csv", s_report;
  sweep->add_option("--kernel", s_kernel, "kernel spec JSON file")->required();
  sweep->add_option("--params", s_params, "parameter JSON file")->required();
  sweep->add_option("--grid", s_grid, "re0,re1,nre,im0,im1,nim");
  sweep->add_option("--out", s_out, "CSV output path");
  sweep->add_option("--report", s_report, "report file (default stdout)");

  // classify
  auto* classify = app.add_subcommand("classify", "admissible-region taxonomy");
  std::vector<double> c_adm, c_scat;
  std::string c_svg, c_out;
  classify->add_option("--adm", c_adm, "admittance parameters c d")->expected(2);
  classify->add_option("--scat", c_scat, "scattering parameters F G")->expected(2);
  classify->add_option("--svg", c_svg, "write a region plot");
  classify->add_option("--out", c_out, "report file");

  // fit
  auto* fit = app.add_subcommand("fit", "certify sampled data via linear programming");
  std::string f_samples, f_out, f_objective = "margin", f_box;
  int f_N = 0;
  bool f_adm = false, f_scat = false, f_oracle = false;
  fit->add_option("--samples", f_samples, "transfer-sample CSV file")->required();
  fit->add_flag("--adm", f_adm, "admittance parameters");
  fit->add_flag("--scat", f_scat, "scattering parameters");
  fit->add_option("--N", f_N, "weight-vector order N");
  fit->add_option("--objective", f_objective, "margin | c0 | d0");
  fit->add_flag("--oracle", f_oracle, "cross-check with the brute-force grid (N=0)");
  fit->add_option("--box", f_box, "parameter box lo,hi");
  fit->add_option("--out", f_out, "report file (default stdout)");

  // convert
  auto* convert = app.add_subcommand("convert", "Cayley-map transfer samples");
  std::string x_samples, x_direction = "adm2scat", x_out = "convert.csv", x_report;
  double x_tol = 1e-9;
  convert->add_option("--samples", x_samples, "transfer-sample CSV file")->required();
  convert->add_option("--direction", x_direction, "adm2scat | scat2adm");
  convert->add_option("--tol", x_tol, "pole exclusion tolerance on |1+w|");
  convert->add_option("--out", x_out, "converted CSV path");
  convert->add_option("--report", x_report, "report file (default stdout)");

  // plot
  auto* plot = app.add_subcommand("plot", "nine-panel admittance region plot");
  std::string p_svg;
  plot->add_option("--svg", p_svg, "SVG output path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  if (verify->parsed()) {
    const std::string kernel = read_file(v_kernel);
    const std::string params = read_file(v_params);
    const std::string options = "{\"tol\":" + num(v_tol) +
                                ",\"horizons\":" + std::to_string(v_horizons) +
                                ",\"inputs\":{\"kernel\":\"" + json_escape(v_kernel) +
                                "\",\"params\":\"" + json_escape(v_params) + "\"}}";
    char* report = nullptr;
    check(pp_run_verify(kernel.c_str(), params.c_str(), options.c_str(), &report));
    emit(v_out, take(report));
    return kExitOk;
  }

  if (sweep->parsed()) {
    const std::string kernel = read_file(s_kernel);
    const std::string params = read_file(s_params);
    std::string options = "{\"inputs\":{\"kernel\":\"" + json_escape(s_kernel) +
                          "\",\"params\":\"" + json_escape(s_params) + "\"}";
    if (!s_grid.empty()) options += "," + grid_json(s_grid);
    options += "}";
    char* csv = nullptr;
    char* report = nullptr;
    check(pp_run_sweep(kernel.c_str(), params.c_str(), options.c_str(), &csv, &report));
    emit(s_out, take(csv));
    emit(s_report, take(report));
    return kExitOk;
  }

  if (classify->parsed()) {
    if (c_adm.empty() == c_scat.empty())
      fail_input("classify needs exactly one of --adm or --scat");
    const bool adm = !c_adm.empty();
    const std::vector<double>& p = adm ? c_adm : c_scat;
    const std::string options =
        std::string("{\"kind\":\"") + (adm ? "admittance" : "scattering") +
        "\",\"p1\":" + num(p[0]) + ",\"p2\":" + num(p[1]) +
        ",\"svg\":" + (c_svg.empty() ? "false" : "true") + "}";
    char* text = nullptr;
    char* report = nullptr;
    char* svg = nullptr;
    check(pp_run_classify(options.c_str(), &text, &report, &svg));
    std::cout << take(text) << "\n";
    if (!c_out.empty()) write_file(c_out, take(report));
    else take(report);
    const std::string svg_text = take(svg);
    if (!c_svg.empty()) write_file(c_svg, svg_text);
    return kExitOk;
  }

  if (fit->parsed()) {
    if (f_adm == f_scat) fail_input("fit needs exactly one of --adm or --scat");
    const std::string samples = read_file(f_samples);
    std::string options = std::string("{\"kind\":\"") +
                          (f_adm ? "admittance" : "scattering") +
                          "\",\"N\":" + std::to_string(f_N) + ",\"objective\":\"" +
                          json_escape(f_objective) + "\",\"oracle\":" +
                          (f_oracle ? "true" : "false") +
                          ",\"inputs\":{\"samples\":\"" + json_escape(f_samples) + "\"}";
    if (!f_box.empty()) {
      const auto comma = f_box.find(',');
      if (comma == std::string::npos) fail_input("--box expects lo,hi");
      try {
        options += ",\"box\":[" + num(std::stod(f_box.substr(0, comma))) + "," +
                   num(std::stod(f_box.substr(comma + 1))) + "]";
      } catch (...) {
        fail_input("--box expects lo,hi");
      }
    }
    options += "}";
    char* report = nullptr;
    check(pp_run_fit(samples.c_str(), options.c_str(), &report));
    emit(f_out, take(report));
    return kExitOk;
  }

  if (convert->parsed()) {
    const std::string samples = read_file(x_samples);
    const std::string options = "{\"direction\":\"" + json_escape(x_direction) +
                                "\",\"tol\":" + num(x_tol) +
                                ",\"inputs\":{\"samples\":\"" + json_escape(x_samples) +
                                "\"}}";
    char* csv = nullptr;
    char* report = nullptr;
    check(pp_run_convert(samples.c_str(), options.c_str(), &csv, &report));
    emit(x_out, take(csv));
    emit(x_report, take(report));
    return kExitOk;
  }

  if (plot->parsed()) {
    char* svg = nullptr;
    check(pp_run_plot("{}", &svg));
    emit(p_svg, take(svg));
    return kExitOk;
  }

  return kExitInput;
}

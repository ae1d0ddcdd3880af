#include "pseudopass.h"

#include <cmath>
#include <cstring>
#include <new>
#include <string>

#include "pseudopass/convert.hpp"
#include "pseudopass/geometry.hpp"
#include "pseudopass/io.hpp"
#include "pseudopass/runner.hpp"

struct pp_kernel {
  pseudopass::Kernel k;
};

struct pp_samples {
  std::vector<pseudopass::TransferSample> v;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// Runs fn, translating C++ failures into status codes + pp_last_error().
template <typename Fn>
pp_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return PP_OK;
  } catch (const pseudopass::ParseError& e) {
    g_last_error = e.what();
    return PP_ERR_PARSE;
  } catch (const pseudopass::ValidationError& e) {
    g_last_error = e.what();
    return PP_ERR_INVALID;
  } catch (const pseudopass::DomainError& e) {
    g_last_error = e.what();
    return PP_ERR_DOMAIN;
  } catch (const pseudopass::UnsupportedError& e) {
    g_last_error = e.what();
    return PP_ERR_UNSUPPORTED;
  } catch (const pseudopass::NumericError& e) {
    g_last_error = e.what();
    return PP_ERR_NUMERIC;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return PP_ERR_INTERNAL;
  }
}

pp_status need(bool cond, const char* message) {
  if (cond) return PP_OK;
  g_last_error = message;
  return PP_ERR_INVALID;
}

nlohmann::json parse_options(const char* options_json) {
  if (!options_json || !*options_json) return nlohmann::json::object();
  nlohmann::json j = nlohmann::json::parse(options_json, nullptr, false);
  if (j.is_discarded()) throw pseudopass::ParseError("options: malformed JSON");
  if (!j.is_object()) throw pseudopass::ParseError("options: expected a JSON object");
  return j;
}

pp_region to_c_region(const pseudopass::Region& r) {
  pp_region out{};
  out.shape = static_cast<int>(r.shape);
  out.case_index = r.case_index;
  out.center_re = r.center.real();
  out.center_im = r.center.imag();
  out.radius = r.radius;
  out.bound = r.bound;
  out.side_ge = r.side == pseudopass::HalfPlaneSide::GreaterEq ? 1 : 0;
  return out;
}

pseudopass::Region from_c_region(const pp_region& r) {
  pseudopass::Region out;
  out.shape = static_cast<pseudopass::RegionShape>(r.shape);
  out.case_index = r.case_index;
  out.center = pseudopass::Complex{r.center_re, r.center_im};
  out.radius = r.radius;
  out.bound = r.bound;
  out.side = r.side_ge ? pseudopass::HalfPlaneSide::GreaterEq
                       : pseudopass::HalfPlaneSide::LessEq;
  return out;
}

}  // namespace

extern "C" {

const char* pp_version(void) { return pseudopass::kToolVersion; }

const char* pp_last_error(void) { return g_last_error.c_str(); }

void pp_string_free(char* s) { delete[] s; }

pp_status pp_kernel_parse(const char* json_text, pp_kernel** out) {
  if (pp_status st = need(json_text && out, "null argument")) return st;
  return guarded([&] { *out = new pp_kernel{pseudopass::kernel_from_json(json_text)}; });
}

void pp_kernel_free(pp_kernel* k) { delete k; }

pp_status pp_kernel_to_json(const pp_kernel* k, char** out_json) {
  if (pp_status st = need(k && out_json, "null argument")) return st;
  return guarded([&] { *out_json = dup_string(pseudopass::kernel_to_json(k->k).dump(2)); });
}

pp_status pp_kernel_digest(const pp_kernel* k, char** out_hex) {
  if (pp_status st = need(k && out_hex, "null argument")) return st;
  return guarded([&] { *out_hex = dup_string(pseudopass::kernel_digest(k->k)); });
}

pp_status pp_kernel_support_lower_bound(const pp_kernel* k, double* out) {
  if (pp_status st = need(k && out, "null argument")) return st;
  return guarded([&] { *out = pseudopass::support_lower_bound(k->k); });
}

pp_status pp_kernel_is_real(const pp_kernel* k, int* out) {
  if (pp_status st = need(k && out, "null argument")) return st;
  return guarded([&] { *out = pseudopass::is_real_kernel(k->k) ? 1 : 0; });
}

pp_status pp_kernel_is_tempered(const pp_kernel* k, int* out) {
  if (pp_status st = need(k && out, "null argument")) return st;
  return guarded([&] { *out = k->k.is_tempered() ? 1 : 0; });
}

pp_status pp_kernel_laplace(const pp_kernel* k, double s_re, double s_im,
                            double* w_re, double* w_im) {
  if (pp_status st = need(k && w_re && w_im, "null argument")) return st;
  return guarded([&] {
    const pseudopass::Complex w =
        pseudopass::laplace_eval(k->k, pseudopass::Complex{s_re, s_im});
    *w_re = w.real();
    *w_im = w.imag();
  });
}

pp_status pp_samples_parse_csv(const char* csv_text, pp_samples** out) {
  if (pp_status st = need(csv_text && out, "null argument")) return st;
  return guarded([&] { *out = new pp_samples{pseudopass::samples_from_csv(csv_text)}; });
}

void pp_samples_free(pp_samples* s) { delete s; }

size_t pp_samples_count(const pp_samples* s) { return s ? s->v.size() : 0; }

pp_status pp_samples_get(const pp_samples* s, size_t index, double* s_re,
                         double* s_im, double* w_re, double* w_im) {
  if (pp_status st = need(s && s_re && s_im && w_re && w_im, "null argument")) return st;
  if (pp_status st = need(index < s->v.size(), "sample index out of range")) return st;
  const auto& smp = s->v[index];
  *s_re = smp.s.real();
  *s_im = smp.s.imag();
  *w_re = smp.w.real();
  *w_im = smp.w.imag();
  return PP_OK;
}

pp_status pp_classify_admittance(double c, double d, pp_region* out) {
  if (pp_status st = need(out != nullptr, "null argument")) return st;
  return guarded([&] { *out = to_c_region(pseudopass::classify_admittance(c, d)); });
}

pp_status pp_classify_scattering(double F, double G, pp_region* out) {
  if (pp_status st = need(out != nullptr, "null argument")) return st;
  return guarded([&] { *out = to_c_region(pseudopass::classify_scattering(F, G)); });
}

pp_status pp_region_contains(const pp_region* r, double re, double im, double tol,
                             int* out) {
  if (pp_status st = need(r && out, "null argument")) return st;
  return guarded([&] {
    *out = pseudopass::contains(from_c_region(*r), pseudopass::Complex{re, im}, tol)
               ? 1
               : 0;
  });
}

pp_status pp_params_adm_to_scat(const double* c, const double* d, size_t n,
                                double* F, double* G) {
  if (pp_status st = need(c && d && F && G && n > 0, "null or empty argument")) return st;
  return guarded([&] {
    pseudopass::AdmittanceParams p{std::vector<double>(c, c + n),
                                   std::vector<double>(d, d + n)};
    const pseudopass::ScatteringParams s = pseudopass::params_adm_to_scat(p);
    for (size_t j = 0; j < n; ++j) {
      F[j] = s.F[j];
      G[j] = s.G[j];
    }
  });
}

pp_status pp_params_scat_to_adm(const double* F, const double* G, size_t n,
                                double* c, double* d) {
  if (pp_status st = need(F && G && c && d && n > 0, "null or empty argument")) return st;
  return guarded([&] {
    pseudopass::ScatteringParams p{std::vector<double>(F, F + n),
                                   std::vector<double>(G, G + n)};
    const pseudopass::AdmittanceParams a = pseudopass::params_scat_to_adm(p);
    for (size_t j = 0; j < n; ++j) {
      c[j] = a.c[j];
      d[j] = a.d[j];
    }
  });
}

pp_status pp_cayley(double w_re, double w_im, double tol, double* out_re,
                    double* out_im) {
  if (pp_status st = need(out_re && out_im, "null argument")) return st;
  return guarded([&] {
    const pseudopass::Complex z =
        pseudopass::cayley(pseudopass::Complex{w_re, w_im}, tol);
    *out_re = z.real();
    *out_im = z.imag();
  });
}

pp_status pp_admittance_range_residual(double w_re, double w_im, double s_re,
                                       double s_im, const double* c, const double* d,
                                       size_t n, double* out) {
  if (pp_status st = need(c && d && out && n > 0, "null or empty argument")) return st;
  return guarded([&] {
    pseudopass::AdmittanceParams p{std::vector<double>(c, c + n),
                                   std::vector<double>(d, d + n)};
    *out = pseudopass::admittance_range_residual(pseudopass::Complex{w_re, w_im},
                                                 pseudopass::Complex{s_re, s_im}, p);
  });
}

pp_status pp_scattering_range_residual(double w_re, double w_im, double s_re,
                                       double s_im, const double* F, const double* G,
                                       size_t n, double* out) {
  if (pp_status st = need(F && G && out && n > 0, "null or empty argument")) return st;
  return guarded([&] {
    pseudopass::ScatteringParams p{std::vector<double>(F, F + n),
                                   std::vector<double>(G, G + n)};
    *out = pseudopass::scattering_range_residual(pseudopass::Complex{w_re, w_im},
                                                 pseudopass::Complex{s_re, s_im}, p);
  });
}

pp_status pp_run_verify(const char* kernel_json, const char* params_json,
                        const char* options_json, char** report_json) {
  if (pp_status st = need(kernel_json && params_json && report_json, "null argument"))
    return st;
  return guarded([&] {
    *report_json = dup_string(
        pseudopass::run_verify(kernel_json, params_json, parse_options(options_json)));
  });
}

pp_status pp_run_sweep(const char* kernel_json, const char* params_json,
                       const char* options_json, char** csv_out, char** report_json) {
  if (pp_status st =
          need(kernel_json && params_json && csv_out && report_json, "null argument"))
    return st;
  return guarded([&] {
    auto out =
        pseudopass::run_sweep(kernel_json, params_json, parse_options(options_json));
    *csv_out = dup_string(out.csv);
    *report_json = dup_string(out.report);
  });
}

pp_status pp_run_classify(const char* options_json, char** text_out,
                          char** report_json, char** svg_out) {
  if (pp_status st = need(text_out && report_json, "null argument")) return st;
  return guarded([&] {
    auto out = pseudopass::run_classify(parse_options(options_json));
    *text_out = dup_string(out.text);
    *report_json = dup_string(out.report);
    if (svg_out) *svg_out = out.svg.empty() ? nullptr : dup_string(out.svg);
  });
}

pp_status pp_run_fit(const char* samples_csv, const char* options_json,
                     char** report_json) {
  if (pp_status st = need(samples_csv && report_json, "null argument")) return st;
  return guarded([&] {
    *report_json =
        dup_string(pseudopass::run_fit(samples_csv, parse_options(options_json)));
  });
}

pp_status pp_run_convert(const char* samples_csv, const char* options_json,
                         char** csv_out, char** report_json) {
  if (pp_status st = need(samples_csv && csv_out && report_json, "null argument"))
    return st;
  return guarded([&] {
    auto out = pseudopass::run_convert(samples_csv, parse_options(options_json));
    *csv_out = dup_string(out.csv);
    *report_json = dup_string(out.report);
  });
}

pp_status pp_run_plot(const char* options_json, char** svg_out) {
  if (pp_status st = need(svg_out != nullptr, "null argument")) return st;
  return guarded([&] { *svg_out = dup_string(pseudopass::run_plot(parse_options(options_json))); });
}

}  // extern "C"

// Python bindings. Scalars cross the boundary as strings ("3/4", "pi/16")
// and reports come back as JSON text, decoded on the Python side.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <sstream>

#include "gaplab/cli.hpp"
#include "gaplab/error.hpp"
#include "gaplab/gap_core.hpp"
#include "gaplab/parse.hpp"
#include "gaplab/serialize.hpp"
#include "gaplab/theorem_suite.hpp"

namespace py = pybind11;
using namespace gaplab;

namespace {

struct Settings {
  Mode mode;
  unsigned bits;
  ToleranceContext ctx;
};

Settings settings(const std::string& mode, unsigned bits, std::string_view tol) {
  if (mode == "exact") return {Mode::exact, bits, ToleranceContext::exact()};
  if (mode == "approx") return {Mode::approx, bits, ToleranceContext::approx(bits, tol)};
  throw Error(ErrorKind::invalid_argument, "mode must be 'exact' or 'approx'");
}

Scalar scalar(const std::string& text, const Settings& s) {
  return parse_scalar(text, s.mode, s.bits);
}

// A builtin name, or the JSON text of a piecewise linear function.
PeriodicFunction function(const std::string& spec, const Settings& s) {
  const auto first = spec.find_first_not_of(" \t\n");
  if (first != std::string::npos && spec[first] == '{') {
    Json j;
    try {
      j = Json::parse(spec);
    } catch (const Json::exception& e) {
      throw Error(ErrorKind::parse_error, e.what());
    }
    return pl_from_json(j);
  }
  PeriodicFunction f = builtin(spec, s.bits);
  if (s.mode == Mode::exact && std::holds_alternative<AnalyticPeriodic>(f))
    throw Error(ErrorKind::invalid_argument, "analytic functions need approx mode");
  return f;
}

const PiecewiseLinear& piecewise(const PeriodicFunction& f) {
  if (const auto* pl = std::get_if<PiecewiseLinear>(&f)) return *pl;
  throw Error(ErrorKind::invalid_argument, "statement needs a piecewise linear function");
}

std::string text(const Scalar& x) {
  if (x.is_exact()) return x.to_string();
  return x.real().to_string();
}

std::vector<std::string> texts(const std::vector<Scalar>& xs) {
  std::vector<std::string> out;
  for (const Scalar& x : xs) out.push_back(text(x));
  return out;
}

}  // namespace

PYBIND11_MODULE(_gaplab, m) {
  m.doc() = "Gap lengths of periodic functions sampled along arithmetic progressions";

  // Held for the life of the process, like the module itself.
  static py::handle error_type = py::exception<Error>(m, "GaplabError", PyExc_ValueError).release();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      const std::string message = std::string(to_string(e.kind())) + ": " + e.what();
      PyErr_SetString(error_type.ptr(), message.c_str());
    }
  });

  m.attr("DEFAULT_BITS") = kDefaultPrecisionBits;
  m.attr("DEFAULT_TOLERANCE") = std::string(kDefaultTolerance);

  m.def(
      "frac",
      [](const std::string& x, const std::string& mode, unsigned bits) {
        const Settings s = settings(mode, bits, kDefaultTolerance);
        return text(frac(scalar(x, s)));
      },
      py::arg("x"), py::arg("mode") = "exact", py::arg("bits") = kDefaultPrecisionBits);

  m.def(
      "reduce_mod_period",
      [](const std::string& x, const std::string& period, const std::string& mode, unsigned bits) {
        const Settings s = settings(mode, bits, kDefaultTolerance);
        return text(reduce_mod_period(scalar(x, s), scalar(period, s)));
      },
      py::arg("x"), py::arg("period"), py::arg("mode") = "exact",
      py::arg("bits") = kDefaultPrecisionBits);

  m.def(
      "evaluate",
      [](const std::string& fn, const std::string& x, const std::string& mode, unsigned bits) {
        const Settings s = settings(mode, bits, kDefaultTolerance);
        return text(eval(function(fn, s), scalar(x, s)));
      },
      py::arg("fn"), py::arg("x"), py::arg("mode") = "exact", py::arg("bits") = kDefaultPrecisionBits);

  m.def(
      "gap_report",
      [](const std::string& fn, const std::string& alpha, std::size_t count, const std::string& beta,
         const std::string& mode, unsigned bits, const std::string& tol) {
        const Settings s = settings(mode, bits, tol);
        const PeriodicFunction f = function(fn, s);
        GapReport r = gap_report(f, scalar(alpha, s), scalar(beta, s), count, s.ctx);
        if (std::holds_alternative<PiecewiseLinear>(f)) r = classify_gaps(std::move(r), f);
        return to_json(r).dump();
      },
      py::arg("fn"), py::arg("alpha"), py::arg("N"), py::arg("beta") = "0",
      py::arg("mode") = "approx", py::arg("bits") = kDefaultPrecisionBits,
      py::arg("tol") = std::string(kDefaultTolerance));

  m.def(
      "circle_gaps",
      [](const std::vector<std::string>& points, const std::string& mode, unsigned bits,
         const std::string& tol) {
        const Settings s = settings(mode, bits, tol);
        std::vector<Scalar> xs;
        for (const auto& p : points) xs.push_back(scalar(p, s));
        return texts(circle_gaps(xs, s.ctx));
      },
      py::arg("points"), py::arg("mode") = "exact", py::arg("bits") = kDefaultPrecisionBits,
      py::arg("tol") = std::string(kDefaultTolerance));

  m.def(
      "verify",
      [](const std::string& statement, const std::map<std::string, std::string>& params,
         const std::string& mode, unsigned bits, const std::string& tol) {
        const Settings s = settings(mode, bits, tol);
        const auto get = [&](const char* key) -> const std::string& {
          const auto it = params.find(key);
          if (it == params.end())
            throw Error(ErrorKind::invalid_argument, std::string("missing parameter '") + key + "'");
          return it->second;
        };
        const auto num = [&](const char* key) { return scalar(get(key), s); };
        const auto count = [&](const char* key) -> std::size_t { return std::stoul(get(key)); };
        const auto beta = [&] { return params.count("beta") ? num("beta") : Scalar(0L); };
        VerificationReport r;
        if (statement == statement::three_gap) {
          r = verify_three_gap(num("alpha"), count("N"), s.ctx);
        } else if (statement == statement::affine) {
          r = verify_affine(num("m"), num("c"), num("alpha"), beta(), count("N"), s.ctx);
        } else if (statement == statement::general) {
          r = verify_general_bound(piecewise(function(get("fn"), s)), num("alpha"), count("N"), s.ctx);
        } else if (statement == statement::tightened) {
          r = verify_tightened_bound(piecewise(function(get("fn"), s)), num("alpha"), count("N"), s.ctx);
        } else if (statement == statement::two_piece_shift) {
          r = verify_two_piece_shift(num("kappa"), num("beta"), num("alpha"), count("N"), s.ctx);
        } else if (statement == statement::triangle) {
          r = verify_triangle_bounds(num("alpha"), count("N"), s.ctx);
        } else if (statement == statement::five_distance) {
          r = verify_five_distance(num("alpha"), num("beta"), count("N"), s.ctx);
        } else if (statement == statement::main_construction) {
          r = verify_unbounded_construction(construct_unbounded_pl(count("n")), s.ctx);
        } else {
          throw Error(ErrorKind::invalid_argument, "unknown statement '" + statement + "'");
        }
        return to_json(r).dump();
      },
      py::arg("statement"), py::arg("params"), py::arg("mode") = "approx",
      py::arg("bits") = kDefaultPrecisionBits, py::arg("tol") = std::string(kDefaultTolerance));

  m.def(
      "construct_main",
      [](std::size_t n) {
        const auto c = construct_unbounded_pl(n);
        Json j{{"function", to_json(c.function)},
               {"epsilon", to_json(c.epsilon)},
               {"alpha", to_json(c.alpha)},
               {"N", c.count},
               {"n", c.n}};
        return j.dump();
      },
      py::arg("n"));

  m.def(
      "construct_c2",
      [](std::size_t n, const std::string& fn, unsigned bits, const std::string& tol) {
        const Settings s = settings("approx", bits, tol);
        const PeriodicFunction f = function(fn, s);
        const auto* analytic = std::get_if<AnalyticPeriodic>(&f);
        if (!analytic) throw Error(ErrorKind::invalid_argument, "c2 construction needs an analytic function");
        const auto [w, r] = construct_c2_witness(*analytic, n, s.ctx);
        Json j = to_json(w);
        j["report"] = to_json(r);
        return j.dump();
      },
      py::arg("n"), py::arg("fn") = "cosine", py::arg("bits") = kDefaultPrecisionBits,
      py::arg("tol") = std::string(kDefaultTolerance));

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::vector<std::string> argv{"gaplab"};
        argv.insert(argv.end(), args.begin(), args.end());
        std::ostringstream out, err;
        const int code = cli::run(argv, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}

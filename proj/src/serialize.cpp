#include "gaplab/serialize.hpp"

#include <sstream>

#include "gaplab/error.hpp"
#include "gaplab/parse.hpp"

namespace gaplab {

Json to_json(const Scalar& x) {
  if (x.is_exact()) return Json{{"rational", x.rational().get_str()}};
  return Json{{"real", x.real().to_string()}, {"bits", x.real().bits()}};
}

Scalar scalar_from_json(const Json& j) {
  try {
    if (j.is_number_integer()) return Scalar(j.get<long>());
    if (j.is_string()) return parse_scalar(j.get<std::string>(), Mode::exact);
    if (j.is_object() && j.contains("rational")) {
      Rational q;
      if (q.set_str(j.at("rational").get<std::string>(), 10) != 0 || q.get_den() == 0) {
        throw Error(ErrorKind::parse_error, "bad rational " + j.dump());
      }
      return Scalar(q);
    }
    if (j.is_object() && j.contains("real")) {
      const unsigned bits = j.value("bits", kDefaultPrecisionBits);
      if (bits < kMinPrecisionBits) throw Error(ErrorKind::parse_error, "bits below minimum");
      return Scalar(Real::parse(j.at("real").get<std::string>(), bits));
    }
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::parse_error, std::string("bad scalar: ") + e.what());
  }
  throw Error(ErrorKind::parse_error, "bad scalar " + j.dump());
}

Json to_json(const PiecewiseLinear& f) {
  Json pieces = Json::array();
  for (const Piece& p : f.pieces()) {
    pieces.push_back({{"left", to_json(p.left)},
                      {"right", to_json(p.right)},
                      {"right_closed", p.right_closed},
                      {"slope", to_json(p.slope)},
                      {"intercept", to_json(p.intercept)}});
  }
  return Json{{"period", to_json(f.period())}, {"pieces", std::move(pieces)}};
}

PiecewiseLinear pl_from_json(const Json& j) {
  std::vector<Piece> pieces;
  Scalar period;
  try {
    period = scalar_from_json(j.at("period"));
    for (const Json& p : j.at("pieces")) {
      pieces.push_back(Piece{scalar_from_json(p.at("left")), scalar_from_json(p.at("right")),
                             p.value("right_closed", false), scalar_from_json(p.at("slope")),
                             scalar_from_json(p.at("intercept"))});
    }
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::parse_error, std::string("bad function document: ") + e.what());
  }
  return PiecewiseLinear::validate(std::move(pieces), std::move(period));
}

Json to_json(const GapReport& report) {
  Json values = Json::array();
  for (const ValueGroup& g : report.values) values.push_back(to_json(g.value));
  Json gaps = Json::array();
  for (const GapEntry& e : report.entries) {
    gaps.push_back({{"lower", to_json(e.lower_value)},
                    {"upper", to_json(e.upper_value)},
                    {"length", to_json(e.length)},
                    {"kind", to_string(e.kind)},
                    {"piece", e.piece ? Json(*e.piece) : Json(nullptr)}});
  }
  Json gap_set = Json::array();
  for (const Scalar& g : report.gap_set) gap_set.push_back(to_json(g));
  return Json{{"n", report.n()},
              {"values", std::move(values)},
              {"gaps", std::move(gaps)},
              {"gap_set", std::move(gap_set)},
              {"gap_count", report.gap_count()},
              {"inf", to_json(report.extrema.inf_value)},
              {"sup", to_json(report.extrema.sup_value)},
              {"mode", to_string(report.mode)},
              {"tolerance", report.ctx.mode() == Mode::exact
                                ? Json("0")
                                : Json(report.ctx.tolerance().to_string())}};
}

Json to_json(const VerificationReport& report) {
  Json params = Json::object();
  for (const Parameter& p : report.parameters) params[p.name] = to_json(p.value);
  Json out{{"statement", report.statement},
           {"parameters", std::move(params)},
           {"bound",
            {{"lower", report.lower_bound ? Json(*report.lower_bound) : Json(nullptr)},
             {"upper", report.upper_bound ? Json(*report.upper_bound) : Json(nullptr)}}},
           {"observed", report.observed},
           {"pass", report.pass}};
  if (report.function) out["function"] = to_json(*report.function);
  if (report.witness) out["witness"] = to_json(*report.witness);
  if (!report.circle_lengths.empty()) {
    Json lengths = Json::array();
    for (const Scalar& s : report.circle_lengths) lengths.push_back(to_json(s));
    out["circle_lengths"] = std::move(lengths);
  }
  return out;
}

Json to_json(const C2Witness& w) {
  return Json{{"I", to_json(w.first_inflection)},
              {"I_prime", to_json(w.first_critical)},
              {"alpha", to_json(w.alpha)},
              {"n", w.n}};
}

std::string to_csv(const GapReport& report) {
  std::ostringstream out;
  out << kGapCsvHeader << '\n';
  const std::size_t n = report.values.size();
  for (std::size_t i = 0; i < report.entries.size(); ++i) {
    const GapEntry& e = report.entries[i];
    const bool wrap = e.kind == GapKind::extremal;
    const ValueGroup& lo = report.values[wrap ? 0 : i];
    const ValueGroup& hi = report.values[wrap ? n - 1 : i + 1];
    out << i << ',' << lo.ds.front() << ',' << hi.ds.front() << ',' << e.lower_value.to_string()
        << ',' << e.upper_value.to_string() << ',' << e.length.to_string() << ','
        << to_string(e.kind) << ',';
    if (e.piece) out << *e.piece;
    out << '\n';
  }
  return out.str();
}

}  // namespace gaplab

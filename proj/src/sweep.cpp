#include "gaplab/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <optional>
#include <thread>

#include "gaplab/error.hpp"

namespace gaplab {

Rng draw_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return Rng(seq);
}

Scalar random_unit_real(Rng& rng, unsigned bits) {
  const std::size_t words = (bits + 63) / 64;
  std::vector<std::uint64_t> raw(words);
  mpz_class z;
  do {
    for (auto& w : raw) w = rng();
    mpz_import(z.get_mpz_t(), raw.size(), 1, sizeof(std::uint64_t), 0, 0, raw.data());
  } while (z == 0);
  Real out(bits);
  mpfr_set_z_2exp(out.get(), z.get_mpz_t(), -static_cast<long>(64 * words), MPFR_RNDN);
  if (out >= Real(1L, bits)) return Scalar(Real::parse("0.5", bits));  // rounded up to 1
  return Scalar(out);
}

Scalar random_rational(Rng& rng, long lo, long hi, long max_den) {
  std::uniform_int_distribution<long> den(1, max_den);
  const long q = den(rng);
  std::uniform_int_distribution<long> num(lo * q, hi * q - 1);
  return Scalar::ratio(num(rng), q);
}

Scalar random_unit_rational(Rng& rng, long max_den) {
  std::uniform_int_distribution<long> den(2, std::max(2L, max_den));
  const long q = den(rng);
  std::uniform_int_distribution<long> num(1, q - 1);
  return Scalar::ratio(num(rng), q);
}

namespace {

constexpr long kBreakpointDen = 24;
constexpr long kInterceptDen = 12;

std::optional<PiecewiseLinear> try_random_pl(Rng& rng, std::size_t pieces_wanted,
                                             FunctionShape shape) {
  if (shape.monotone) shape.injective = true;

  std::vector<Scalar> cuts;
  while (cuts.size() + 1 < pieces_wanted) {
    Scalar c = random_unit_rational(rng, kBreakpointDen);
    if (std::find(cuts.begin(), cuts.end(), c) == cuts.end()) cuts.push_back(std::move(c));
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.insert(cuts.begin(), Scalar(0L));
  cuts.push_back(Scalar(1L));

  std::uniform_int_distribution<long> magnitude(1, 5);
  std::bernoulli_distribution coin(0.5);
  const long direction = coin(rng) ? 1 : -1;
  std::vector<Piece> pieces(pieces_wanted);
  for (std::size_t i = 0; i < pieces_wanted; ++i) {
    pieces[i].left = cuts[i];
    pieces[i].right = cuts[i + 1];
    const long sign = shape.monotone ? direction : (coin(rng) ? 1 : -1);
    pieces[i].slope = Scalar(sign * magnitude(rng));
  }
  if (shape.equal_end_slopes) pieces.back().slope = pieces.front().slope;

  if (!shape.injective) {
    for (Piece& p : pieces) p.intercept = random_rational(rng, -3, 3, kInterceptDen);
  } else {
    // Stack the piece images bottom to top with positive spacing.
    std::vector<std::size_t> order(pieces_wanted);
    std::iota(order.begin(), order.end(), 0);
    if (shape.monotone) {
      if (direction < 0) std::reverse(order.begin(), order.end());
    } else {
      std::shuffle(order.begin(), order.end(), rng);
    }
    Scalar cursor = random_rational(rng, -2, 2, kInterceptDen);
    for (const std::size_t i : order) {
      Piece& p = pieces[i];
      const Scalar& low_end = p.slope.sign() > 0 ? p.left : p.right;
      p.intercept = cursor - p.slope * low_end;
      cursor += abs(p.slope) * (p.right - p.left) + random_rational(rng, 0, 1, 16) + Scalar::ratio(1, 32);
    }
  }

  try {
    PiecewiseLinear f = PiecewiseLinear::validate(std::move(pieces), Scalar(1L));
    if (shape.injective && !f.injective_on_fd()) return std::nullopt;
    if (shape.monotone && !f.monotone_on_fd()) return std::nullopt;
    return f;
  } catch (const Error&) {
    return std::nullopt;  // collinear neighbours; redraw
  }
}

}  // namespace

PiecewiseLinear random_pl(Rng& rng, std::size_t min_pieces, std::size_t max_pieces,
                          FunctionShape shape) {
  if (min_pieces < 1 || max_pieces < min_pieces) {
    throw Error(ErrorKind::invalid_argument, "bad piece count range");
  }
  std::uniform_int_distribution<std::size_t> count(min_pieces, max_pieces);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    if (auto f = try_random_pl(rng, count(rng), shape)) return std::move(*f);
  }
  throw Error(ErrorKind::search_failure, "could not draw a function of the requested shape");
}

double SweepResult::pass_rate() const {
  if (rows.empty()) return 1.0;
  return static_cast<double>(rows.size() - failures) / static_cast<double>(rows.size());
}

const std::vector<std::string>& sweepable_statements() {
  static const std::vector<std::string> ids = {
      statement::three_gap,       statement::affine,        statement::general,
      statement::tightened,       statement::two_piece_shift, statement::triangle,
      statement::five_distance,   statement::main_construction, statement::c2_construction};
  return ids;
}

namespace {

// Approx alpha for three draws in four, a rational alpha otherwise.
Scalar draw_alpha(Rng& rng, const ToleranceContext& ctx) {
  std::uniform_int_distribution<int> pick(0, 3);
  if (pick(rng) == 0) return random_unit_rational(rng, 1000);
  return random_unit_real(rng, ctx.precision_bits());
}

}  // namespace

VerificationReport sweep_draw(const SweepOptions& o, std::size_t index) {
  Rng rng = draw_rng(o.seed, index);
  const ToleranceContext& ctx = o.ctx;
  const std::size_t max_count = std::max<std::size_t>(o.max_count, 2);
  std::uniform_int_distribution<std::size_t> count(1, max_count);
  const std::size_t max_pieces = std::max<std::size_t>(o.max_pieces, 2);
  const std::string& id = o.statement;

  if (id == statement::three_gap) {
    Scalar alpha = draw_alpha(rng, ctx);
    return verify_three_gap(alpha, count(rng), ctx);
  }
  if (id == statement::affine) {
    std::uniform_int_distribution<long> slope(-5, 5);
    Scalar m(slope(rng));
    Scalar c = random_rational(rng, -3, 3, kInterceptDen);
    Scalar alpha = draw_alpha(rng, ctx);
    Scalar beta = random_unit_rational(rng, 100);
    return verify_affine(m, c, alpha, beta, count(rng), ctx);
  }
  if (id == statement::general) {
    PiecewiseLinear f = random_pl(rng, 2, max_pieces, {.injective = true});
    Scalar alpha = draw_alpha(rng, ctx);
    return verify_general_bound(f, alpha, count(rng), ctx);
  }
  if (id == statement::tightened) {
    PiecewiseLinear f =
        random_pl(rng, 2, max_pieces, {.injective = true, .monotone = true, .equal_end_slopes = true});
    Scalar alpha = draw_alpha(rng, ctx);
    return verify_tightened_bound(f, alpha, count(rng), ctx);
  }
  if (id == statement::two_piece_shift) {
    Scalar kappa = random_unit_rational(rng, 60);
    Scalar shift = random_unit_rational(rng, 60);
    while (shift > kappa) shift = random_unit_rational(rng, 60);
    Scalar alpha = draw_alpha(rng, ctx);
    return verify_two_piece_shift(kappa, shift, alpha, count(rng), ctx);
  }
  if (id == statement::triangle) {
    std::uniform_int_distribution<std::size_t> n(2, max_count);
    Scalar alpha = random_unit_real(rng, ctx.precision_bits());
    return verify_triangle_bounds(alpha, n(rng), ctx);
  }
  if (id == statement::five_distance) {
    Scalar alpha = draw_alpha(rng, ctx);
    std::bernoulli_distribution exact(0.25);
    Scalar beta = exact(rng) ? random_unit_rational(rng, 1000)
                             : random_unit_real(rng, ctx.precision_bits());
    return verify_five_distance(alpha, beta, count(rng), ctx);
  }
  if (id == statement::main_construction) {
    std::uniform_int_distribution<std::size_t> n(1, 50);
    return verify_unbounded_construction(construct_unbounded_pl(n(rng)),
                                         ToleranceContext::exact());
  }
  if (id == statement::c2_construction) {
    std::uniform_int_distribution<std::size_t> n(1, 50);
    return construct_c2_witness(cosine(ctx.precision_bits()), n(rng), ctx).second;
  }
  throw Error(ErrorKind::invalid_argument, "statement '" + id + "' cannot be swept");
}

SweepResult run_sweep(const SweepOptions& options) {
  const auto& ids = sweepable_statements();
  if (std::find(ids.begin(), ids.end(), options.statement) == ids.end()) {
    throw Error(ErrorKind::invalid_argument, "unknown statement '" + options.statement + "'");
  }
  if (options.draws == 0) throw Error(ErrorKind::invalid_argument, "draws must be at least 1");

  std::vector<std::optional<VerificationReport>> slots(options.draws);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    for (std::size_t i = next++; i < options.draws && !failed; i = next++) {
      try {
        slots[i] = sweep_draw(options, i);
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::clamp<std::size_t>(options.threads, 1, options.draws);
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }
  if (failure) std::rethrow_exception(failure);

  SweepResult result;
  result.statement = options.statement;
  result.rows.reserve(options.draws);
  for (std::size_t i = 0; i < options.draws; ++i) {
    VerificationReport& r = *slots[i];
    result.max_observed = std::max(result.max_observed, r.observed);
    if (!r.pass) ++result.failures;
    result.rows.push_back(SweepRow{i, std::move(r)});
  }
  return result;
}

}  // namespace gaplab

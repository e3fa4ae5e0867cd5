#include "erdoslab/correlation.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "erdoslab/errors.hpp"
#include "erdoslab/primes.hpp"

namespace erdoslab {

namespace {

cplx unit(double turns) {
    const double a = 2 * std::numbers::pi * turns;
    return {std::cos(a), std::sin(a)};
}

bool parse_double(std::string_view s, double& out) {
    const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

bool parse_u64(std::string_view s, std::uint64_t& out) {
    const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

double van_der_corput(std::uint64_t k) {
    double v = 0;
    double base = 0.5;
    while (k) {
        if (k & 1) v += base;
        base /= 2;
        k >>= 1;
    }
    return v;
}

}  // namespace

bool MultiplicativeFn::is_real() const noexcept {
    return tag != Tag::EXP_ALPHA_BIG_OMEGA && tag != Tag::EXP_ALPHA_OMEGA;
}

cplx MultiplicativeFn::at_prime(std::uint64_t p) const {
    switch (tag) {
        case Tag::ONE: return 1;
        case Tag::LIOUVILLE:
        case Tag::MOEBIUS: return -1;
        case Tag::EXP_ALPHA_BIG_OMEGA:
        case Tag::EXP_ALPHA_OMEGA: return unit(alpha);
        case Tag::SMOOTH_BAND_INDICATOR: return (p >= band_lo && p <= band_hi) ? 0.0 : 1.0;
    }
    return 0;
}

cplx MultiplicativeFn::at(const Factorization& f) const {
    switch (tag) {
        case Tag::ONE: return 1;
        case Tag::LIOUVILLE: return (f.big_omega() % 2) ? -1.0 : 1.0;
        case Tag::MOEBIUS:
            if (!f.squarefree()) return 0;
            return (f.omega() % 2) ? -1.0 : 1.0;
        case Tag::EXP_ALPHA_BIG_OMEGA: return unit(alpha * f.big_omega());
        case Tag::EXP_ALPHA_OMEGA: return unit(alpha * f.omega());
        case Tag::SMOOTH_BAND_INDICATOR:
            for (const auto& [p, e] : f.factors) {
                if (p >= band_lo && p <= band_hi) return 0;
            }
            return 1;
    }
    return 0;
}

std::string MultiplicativeFn::name() const {
    switch (tag) {
        case Tag::ONE: return "one";
        case Tag::LIOUVILLE: return "liouville";
        case Tag::MOEBIUS: return "moebius";
        case Tag::EXP_ALPHA_BIG_OMEGA: return "exp_bigomega:" + std::to_string(alpha);
        case Tag::EXP_ALPHA_OMEGA: return "exp_omega:" + std::to_string(alpha);
        case Tag::SMOOTH_BAND_INDICATOR:
            return "band:" + std::to_string(band_lo) + ":" + std::to_string(band_hi);
    }
    return "?";
}

std::optional<MultiplicativeFn> parse_multiplicative_fn(std::string_view text) {
    if (text == "one") return MultiplicativeFn::one();
    if (text == "liouville" || text == "lambda") return MultiplicativeFn::liouville();
    if (text == "moebius" || text == "mu") return MultiplicativeFn::moebius();
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) return std::nullopt;
    const auto head = text.substr(0, colon);
    const auto rest = text.substr(colon + 1);
    if (head == "exp_bigomega" || head == "exp_omega") {
        double a = 0;
        if (!parse_double(rest, a)) return std::nullopt;
        return head == "exp_omega" ? MultiplicativeFn::exp_omega(a) : MultiplicativeFn::exp_big_omega(a);
    }
    if (head == "band") {
        const auto c2 = rest.find(':');
        if (c2 == std::string_view::npos) return std::nullopt;
        std::uint64_t lo = 0, hi = 0;
        if (!parse_u64(rest.substr(0, c2), lo) || !parse_u64(rest.substr(c2 + 1), hi) || lo > hi) {
            return std::nullopt;
        }
        return MultiplicativeFn::band_indicator(lo, hi);
    }
    return std::nullopt;
}

std::vector<cplx> evaluate(const MultiplicativeFn& g, std::uint64_t lo, std::uint64_t hi) {
    const FactorWindow w = sieve_window(lo, hi);
    std::vector<cplx> out(w.size());
    using Tag = MultiplicativeFn::Tag;
    for (std::size_t i = 0; i < w.size(); ++i) {
        switch (g.tag) {
            case Tag::ONE:
            case Tag::SMOOTH_BAND_INDICATOR: out[i] = 1; break;
            case Tag::LIOUVILLE: out[i] = (w.big_omega[i] & 1) ? -1.0 : 1.0; break;
            case Tag::MOEBIUS:
                out[i] = w.omega[i] != w.big_omega[i] ? 0.0 : ((w.omega[i] & 1) ? -1.0 : 1.0);
                break;
            case Tag::EXP_ALPHA_BIG_OMEGA: out[i] = unit(g.alpha * w.big_omega[i]); break;
            case Tag::EXP_ALPHA_OMEGA: out[i] = unit(g.alpha * w.omega[i]); break;
        }
    }
    if (g.tag == Tag::SMOOTH_BAND_INDICATOR && g.band_lo <= hi) {
        const std::uint64_t top = std::min(g.band_hi, hi);
        const std::uint64_t bottom = g.band_lo == 0 ? 0 : g.band_lo - 1;
        if (top > bottom) {
            for_each_prime(bottom, top, [&](std::uint32_t p) {
                for (std::uint64_t m = (lo + p - 1) / p * p; m <= hi; m += p) out[m - lo] = 0;
            });
        }
    }
    return out;
}

std::vector<DirichletCharacter> dirichlet_characters(std::uint64_t q) {
    if (q == 0) throw std::invalid_argument("dirichlet_characters: q must be >= 1");
    if (q > kMaxCharacterModulus) {
        throw BudgetError("dirichlet_characters: modulus beyond table budget", q, kMaxCharacterModulus);
    }
    std::vector<std::uint64_t> units;
    for (std::uint64_t a = 1; a <= q; ++a) {
        if (std::gcd(a % q, q) == 1) units.push_back(a % q);
    }
    const auto phi = static_cast<std::int64_t>(units.size());

    // Each character is a vector of integer phases (value = e(phase / phi)) on
    // the residues of the subgroup built so far; -1 marks "not yet in the subgroup".
    std::vector<std::int64_t> members{1 % static_cast<std::int64_t>(q)};
    std::vector<std::vector<std::int64_t>> chars{std::vector<std::int64_t>(q, -1)};
    chars[0][1 % q] = 0;
    std::vector<bool> in_group(q, false);
    in_group[1 % q] = true;

    for (const auto g : units) {
        if (in_group[g]) continue;
        // Order of g modulo the current subgroup.
        std::int64_t d = 1;
        std::uint64_t gd = g;
        while (!in_group[gd]) {
            gd = gd * g % q;
            ++d;
        }
        std::vector<std::int64_t> new_members;
        for (std::int64_t k = 0; k < d; ++k) {
            std::uint64_t gk = 1 % q;
            for (std::int64_t r = 0; r < k; ++r) gk = gk * g % q;
            for (const auto h : members) new_members.push_back(static_cast<std::int64_t>(h * gk % q));
        }
        std::vector<std::vector<std::int64_t>> new_chars;
        for (const auto& chi : chars) {
            const std::int64_t s = chi[gd];
            for (std::int64_t r = 0; r < d; ++r) {
                const std::int64_t t = (s + phi * r) / d;  // d * t == s (mod phi)
                auto ext = chi;
                for (std::int64_t k = 0; k < d; ++k) {
                    std::uint64_t gk = 1 % q;
                    for (std::int64_t j = 0; j < k; ++j) gk = gk * g % q;
                    for (const auto h : members) {
                        ext[h * gk % q] = ((chi[h] + k * t) % phi + phi) % phi;
                    }
                }
                new_chars.push_back(std::move(ext));
            }
        }
        chars = std::move(new_chars);
        members = std::move(new_members);
        for (const auto m : members) in_group[static_cast<std::size_t>(m)] = true;
    }

    std::vector<DirichletCharacter> out;
    for (const auto& chi : chars) {
        DirichletCharacter c;
        c.q = q;
        c.values.assign(q, 0.0);
        c.principal = true;
        for (std::uint64_t a = 0; a < q; ++a) {
            if (chi[a] < 0) continue;
            c.values[a] = unit(static_cast<double>(chi[a]) / static_cast<double>(phi));
            if (chi[a] != 0) c.principal = false;
        }
        out.push_back(std::move(c));
    }
    std::stable_partition(out.begin(), out.end(), [](const auto& c) { return c.principal; });
    return out;
}

double pretentious_distance(const MultiplicativeFn& f, const MultiplicativeFn& g, std::uint64_t X,
                            double t) {
    if (X < 10) throw std::invalid_argument("pretentious_distance: X must be >= 10");
    long double s = 0;
    for_each_prime(0, X, [&](std::uint32_t p) {
        const double lp = std::log(static_cast<double>(p));
        const cplx twist = t == 0 ? cplx(1) : cplx(std::cos(t * lp), -std::sin(t * lp));
        s += (1.0 - std::real(f.at_prime(p) * std::conj(g.at_prime(p)) * twist)) / p;
    });
    return std::sqrt(static_cast<double>(std::max<long double>(s, 0)));
}

std::vector<double> t_grid(std::uint64_t X, std::size_t size) {
    std::vector<double> out;
    if (size == 0) return out;
    out.push_back(0.0);
    const double xd = static_cast<double>(X);
    const double t_min = 1.0 / std::log(xd);
    for (std::size_t k = 1; out.size() < size; ++k) {
        const std::size_t j = (k + 1) / 2;
        const double mag = t_min * std::pow(xd / t_min, van_der_corput(j));
        out.push_back(k % 2 ? mag : -mag);
    }
    return out;
}

MMeasure m_measure(const MultiplicativeFn& g, std::uint64_t X, std::size_t t_grid_size,
                   std::uint64_t Q) {
    if (X < 10) throw std::invalid_argument("m_measure: X must be >= 10");
    if (Q < 1) throw std::invalid_argument("m_measure: Q must be >= 1");
    if (t_grid_size < 1) throw std::invalid_argument("m_measure: t grid must be nonempty");
    if (Q > kMaxCharacterModulus) {
        throw BudgetError("m_measure: Q beyond character table budget", Q, kMaxCharacterModulus);
    }
    const auto primes = primes_up_to(X);
    std::vector<cplx> gp(primes.size());
    std::vector<double> logp(primes.size());
    long double lipschitz = 0;
    for (std::size_t i = 0; i < primes.size(); ++i) {
        gp[i] = g.at_prime(primes[i]);
        logp[i] = std::log(static_cast<double>(primes[i]));
        lipschitz += logp[i] / primes[i];
    }
    const auto grid = t_grid(X, t_grid_size);

    MMeasure best;
    best.value = std::numeric_limits<double>::infinity();
    std::vector<cplx> twist(primes.size());
    for (const double t : grid) {
        for (std::size_t i = 0; i < primes.size(); ++i) {
            twist[i] = cplx(std::cos(t * logp[i]), -std::sin(t * logp[i]));
        }
        for (std::uint64_t q = 1; q <= Q; ++q) {
            const auto chars = dirichlet_characters(q);
            for (std::size_t c = 0; c < chars.size(); ++c) {
                long double s = 0;
                for (std::size_t i = 0; i < primes.size(); ++i) {
                    const cplx chi = chars[c](primes[i]);
                    s += (1.0 - std::real(gp[i] * std::conj(chi) * twist[i])) / primes[i];
                }
                if (static_cast<double>(s) < best.value) {
                    best.value = static_cast<double>(s);
                    best.t = t;
                    best.q = q;
                    best.character = c;
                }
            }
        }
    }

    auto sorted = grid;
    std::sort(sorted.begin(), sorted.end());
    const double xd = static_cast<double>(X);
    double reach = std::max(sorted.front() + xd, xd - sorted.back());
    for (std::size_t i = 1; i < sorted.size(); ++i) reach = std::max(reach, (sorted[i] - sorted[i - 1]) / 2);
    best.grid_error_cap = static_cast<double>(lipschitz) * reach;
    return best;
}

cplx two_point_correlation(const MultiplicativeFn& g1, const MultiplicativeFn& g2,
                           const CorrelationQuery& q) {
    if (q.N < 1000) throw std::invalid_argument("two_point_correlation: N must be >= 1000");
    if (q.W < 1) throw std::invalid_argument("two_point_correlation: W must be >= 1");
    if (q.h1 == q.h2) throw std::invalid_argument("two_point_correlation: h1 must differ from h2");
    const std::int64_t hmin = std::min(q.h1, q.h2);
    const std::int64_t hmax = std::max(q.h1, q.h2);
    const std::int64_t lo_s = static_cast<std::int64_t>(q.N) + 1 + hmin;
    if (lo_s < 1) throw std::invalid_argument("two_point_correlation: shifted window starts below 1");
    const auto lo = static_cast<std::uint64_t>(lo_s);
    const auto hi = static_cast<std::uint64_t>(static_cast<std::int64_t>(2 * q.N) + hmax);
    const auto v1 = evaluate(g1, lo, hi);
    const auto v2 = g2.tag == g1.tag && g2.alpha == g1.alpha && g2.band_lo == g1.band_lo &&
                            g2.band_hi == g1.band_hi
                        ? v1
                        : evaluate(g2, lo, hi);
    const std::uint64_t b = q.b % q.W;
    std::complex<long double> s = 0;
    for (std::uint64_t n = q.N + 1; n <= 2 * q.N; ++n) {
        if (n % q.W != b) continue;
        const auto i1 = static_cast<std::size_t>(static_cast<std::int64_t>(n) + q.h1 - lo_s);
        const auto i2 = static_cast<std::size_t>(static_cast<std::int64_t>(n) + q.h2 - lo_s);
        const cplx term = (v1[i1] - q.delta_N) * v2[i2];
        s += std::complex<long double>(term.real(), term.imag());
    }
    const long double scale = static_cast<long double>(q.W) / q.N;
    return {static_cast<double>(s.real() * scale), static_cast<double>(s.imag() * scale)};
}

double equidist_defect(const MultiplicativeFn& g1, std::uint64_t N, double delta_N,
                       std::uint64_t q_max) {
    if (N < 1000) throw std::invalid_argument("equidist_defect: N must be >= 1000");
    if (q_max < 1) throw std::invalid_argument("equidist_defect: q_max must be >= 1");
    const auto v = evaluate(g1, N + 1, 2 * N);
    double worst = 0;
    for (std::uint64_t q = 1; q <= q_max; ++q) {
        std::vector<std::complex<long double>> sums(q, 0);
        for (std::uint64_t n = N + 1; n <= 2 * N; ++n) {
            const cplx val = v[n - N - 1];
            sums[n % q] += std::complex<long double>(val.real(), val.imag());
        }
        const long double expect = static_cast<long double>(N) / q * delta_N;
        for (const auto& s : sums) {
            const double dev = static_cast<double>(std::abs(s - expect) / N);
            worst = std::max(worst, dev);
        }
    }
    return worst;
}

}  // namespace erdoslab

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <qtel/andrews.hpp>
#include <qtel/macmahon.hpp>
#include <qtel/telescope.hpp>

#include "oracles.hpp"

namespace
{

using qtel::Certificate;
using qtel::LaurentPoly;
namespace an = qtel::andrews;
namespace mm = qtel::macmahon;

// Collects the first problem seen inside a criterion.
struct Probe {
    std::string problem;

    void expect(bool ok, const std::string &what)
    {
        if (!ok && problem.empty()) {
            problem = what;
        }
    }

    void certified(const Certificate &c)
    {
        expect(c.verified(), c.to_json(false).dump());
    }
};

template <typename... Args>
std::string str(const Args &...args)
{
    std::ostringstream os;
    (os << ... << args);
    return os.str();
}

int failures = 0;

void criterion(int id, const std::string &title, const std::function<void(Probe &)> &body)
{
    Probe p;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(p);
    } catch (const std::exception &e) {
        p.expect(false, str("exception: ", e.what()));
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool ok = p.problem.empty();
    failures += ok ? 0 : 1;
    std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << id << ": " << title << " (" << secs << " s)";
    if (!ok) {
        std::cout << " -- " << p.problem;
    }
    std::cout << std::endl;
}

qtel::TruncatedSeries series_from(const std::vector<long long> &v, int cap)
{
    qtel::TruncatedSeries s(cap);
    for (std::size_t e = 0; e < v.size(); ++e) {
        s.add(static_cast<int>(e), qtel::Integer(v[e]));
    }
    return s;
}

// A failed certificate must name a concrete element and map to a nonzero exit code.
void negative(Probe &p, const Certificate &c, const std::string &label)
{
    p.expect(!c.verified(), label + ": perturbation not detected");
    p.expect(c.counterexample.has_value() && !c.counterexample->element.is_null(), label + ": no counterexample");
    const std::vector<Certificate> batch = {c};
    p.expect(qtel::exit_code_for(batch) != 0, label + ": exit code is zero");
}

} // namespace

int main()
{
    criterion(1, "MacMahon identity, 0 <= n, m <= 6", [](Probe &p) {
        for (int n = 0; n <= 6; ++n) {
            for (int m = 0; m <= 6; ++m) {
                p.expect(mm::closed_form_lhs(n, m) == mm::closed_form_rhs(n, m), str("n=", n, " m=", m));
            }
        }
    });

    criterion(2, "MacMahon recurrences from enumerated sets", [](Probe &p) {
        for (int n = 0; n <= 5; ++n) {
            std::vector<LaurentPoly> f;
            for (int m = 0; m <= 5; ++m) {
                f.push_back(mm::enumerated_F(n, m));
            }
            for (int m = 1; m <= 5; ++m) {
                const LaurentPoly rhs = (LaurentPoly(1) + LaurentPoly::monomial(1, -1, 2 * m - 1)) * f[m - 1];
                p.expect(f[m] == rhs, str("rec-ex1 n=", n, " m=", m));
            }
        }
        LaurentPoly prev = mm::enumerated_F_initial(0);
        for (int n = 1; n <= 6; ++n) {
            const LaurentPoly cur = mm::enumerated_F_initial(n);
            p.expect(cur == (LaurentPoly(1) + LaurentPoly::monomial(1, 1, 2 * n - 1)) * prev,
                     str("rec-initial n=", n));
            prev = cur;
        }
        for (int n = 0; n <= 5; ++n) {
            p.certified(mm::verify_macmahon(n, 5));
        }
    });

    criterion(3, "MacMahon phi and psi bijection certificates", [](Probe &p) {
        for (int n = 0; n <= 5; ++n) {
            for (int m = 0; m <= 5; ++m) {
                for (int k = -m; k <= n; ++k) {
                    p.certified(mm::check_phi_bijection(n, m, k));
                }
            }
        }
        for (int n = 0; n <= 6; ++n) {
            for (int k = 0; k <= n; ++k) {
                p.certified(mm::check_psi_bijection(n, k));
            }
        }
    });

    criterion(4, "Andrews identity at cap n^2+15, 0 <= n <= 6", [](Probe &p) {
        for (int n = 0; n <= 6; ++n) {
            p.certified(an::verify_andrews(n, n * n + 15, an::Which::identity));
        }
        p.expect(an::F_trunc(1, 16) == qtel::TruncatedSeries(16, {{0, 2}, {1, -1}}), "F1 != 2 - q");
        p.expect(an::F_trunc(2, 19) == qtel::TruncatedSeries(19, {{0, 2}, {3, -2}, {4, 1}}),
                 "F2 != 2 - 2q^3 + q^4");
        for (int n = 0; n <= 6; ++n) {
            const int cap = n * n + 15;
            p.expect(an::F_trunc(n, cap) == series_from(oracle::andrews_lhs_series(n, cap), cap),
                     str("series oracle n=", n));
        }
    });

    criterion(5, "Andrews recurrences rec_fn (2..6) and gn (1..6)", [](Probe &p) {
        for (int n = 2; n <= 6; ++n) {
            p.certified(an::verify_andrews(n, n * n + 15, an::Which::rec_fn));
        }
        for (int n = 1; n <= 6; ++n) {
            p.certified(an::verify_andrews(n, n * n + 15, an::Which::gn));
        }
    });

    criterion(6, "Andrews phi certificates on cap-30 slices", [](Probe &p) {
        for (int n = 2; n <= 5; ++n) {
            for (int k = 0; k <= n - 2; ++k) {
                p.certified(an::check_phi(n, k, 30));
            }
        }
        const an::AndrewsObject pinned(an::Triple{{1, 0}, {}, {}});
        const auto step = an::phi_step(2, 0, pinned);
        p.expect(step.rule == an::Rule::staircase, "n=2 example: wrong rule");
        p.expect(step.value == an::AndrewsObject(qtel::Marker{1, 0}, an::Triple{}), "n=2 example: wrong image");
    });

    criterion(7, "Andrews involution certificates, 2 <= n <= 6", [](Probe &p) {
        for (int n = 2; n <= 6; ++n) {
            for (int k : {n - 1, n}) {
                p.certified(an::check_involution(n, k, 30));
            }
        }
    });

    criterion(8, "cancelation bijection at n = m = 3", [](Probe &p) {
        const auto c = mm::check_cancelation(3, 3);
        p.certified(c);
        p.expect(c.domain_size > 0 && c.domain_size == c.codomain_size, "sizes differ");
    });

    criterion(9, "classification, enumerators, Gaussian properties", [](Probe &p) {
        for (int n = 2; n <= 6; ++n) {
            for (int k = 1; k <= n - 2; ++k) {
                const auto dom = an::enum_P(n, k, 30);
                std::vector<an::Triple> embedded;
                for (const auto &t : dom) {
                    const auto tag = an::classify(n, k, t);
                    const bool top = t.lambda.contains(n + k), second = t.lambda.contains(n + k - 1);
                    const int hits = (tag == an::ClassTag::C) + (tag == an::ClassTag::B) + (tag == an::ClassTag::A)
                                     + (tag == an::ClassTag::embedded);
                    p.expect(hits == 1, "domain tag outside A/B/C/embedded");
                    p.expect((tag == an::ClassTag::C) == (top && second), "C predicate");
                    p.expect((tag == an::ClassTag::B) == (top != second), "B predicate");
                    if (tag == an::ClassTag::embedded) {
                        embedded.push_back(t);
                    }
                }
                p.expect(embedded == an::enum_P(n - 1, k - 1, 30), str("embedded class n=", n, " k=", k));
            }
            for (int k = 0; k <= n - 2; ++k) {
                for (const auto &t : an::enum_P(n - 2, k, 30)) {
                    const auto tag = an::classify_codomain(n, k, t);
                    const bool low = t.lambda.contains(n - k - 1), up = t.lambda.contains(n - k);
                    const bool a = !low && !up, b = low != up, both = low && up;
                    p.expect((tag == an::ClassTag::A_prime) == a, "A' predicate");
                    p.expect((tag == an::ClassTag::B_prime) == b, "B' predicate");
                    p.expect((tag == an::ClassTag::C_prime || tag == an::ClassTag::D) == both, "C'/D predicate");
                }
            }
        }
        // enumerator completeness against a naive filter over all partitions
        const int cap = 12;
        const auto everything = oracle::all_partitions(cap);
        for (int n = 0; n <= 4; ++n) {
            for (int k = 0; k <= n; ++k) {
                std::set<an::Triple> want;
                for (const auto &lam : everything) {
                    for (const auto &mu : everything) {
                        const an::Triple t{qtel::staircase(n - k), qtel::Partition(lam), qtel::Partition(mu)};
                        if (t.size() <= cap && an::is_member(n, k, t)) {
                            want.insert(t);
                        }
                    }
                }
                p.expect(an::enum_P(n, k, cap) == std::vector<an::Triple>(want.begin(), want.end()),
                         str("enum_P n=", n, " k=", k));
            }
        }
        for (int n = 0; n <= 4; ++n) {
            for (int m = 0; m <= 3; ++m) {
                for (int k = -m; k <= n; ++k) {
                    std::vector<mm::MacPair> want;
                    for (const auto &mu : oracle::all_partitions(2 * (m + k) * (n - k))) {
                        const mm::MacPair x{qtel::SquareSide{k}, qtel::Partition(mu)};
                        if (mm::in_P(n, m, k, x)) {
                            want.push_back(x);
                        }
                    }
                    std::sort(want.begin(), want.end());
                    p.expect(mm::enum_family(mm::Family::P, n, m, k) == want, str("P n=", n, " m=", m, " k=", k));
                }
            }
        }
        for (int n = 0; n <= 12; ++n) {
            for (int k = 0; k <= n; ++k) {
                const LaurentPoly g = qtel::gaussian_binomial(n, k);
                const int d = k * (n - k);
                p.expect(g.coefficient_sum() == oracle::binomial(n, k), str("box count n=", n, " k=", k));
                for (const auto &[e, c] : g.terms()) {
                    p.expect(g.coefficient(0, d - e.q) == c, str("palindrome n=", n, " k=", k));
                }
                if (n <= 9) {
                    LaurentPoly box;
                    for (const auto &[e, c] : oracle::box_polynomial(k, n - k)) {
                        box += LaurentPoly::monomial(c, 0, e);
                    }
                    p.expect(g == box, str("box polynomial n=", n, " k=", k));
                }
            }
        }
    });

    criterion(10, "negative controls", [](Probe &p) {
        // graded bijection: swap the images of two elements of different weight
        {
            const auto dom = an::domain_slice(3, 1, 20);
            const auto cod = an::codomain_slice(3, 1, 20);
            const auto c = qtel::check_graded_bijection<an::AndrewsObject>(
                [&](const an::AndrewsObject &x) {
                    return x == dom.front() ? an::phi(3, 1, dom.back()) : an::phi(3, 1, x);
                },
                dom, cod, 20, "andrews-phi", {{"perturbed", true}});
            negative(p, c, "andrews-phi");
        }
        // macmahon phi: map everything to its lower copy, ignoring markers
        {
            const auto c = qtel::check_graded_bijection<mm::MacObject>(
                [](const mm::MacObject &x) {
                    auto y = mm::phi_step(2, 2, 0, x).value;
                    y.marker.reset();
                    return y;
                },
                mm::phi_domain(2, 2, 0), mm::phi_codomain(2, 2, 0), std::nullopt, "macmahon-phi");
            negative(p, c, "macmahon-phi");
        }
        // involution: identity map leaves non-fixed elements fixed
        {
            const auto c = qtel::check_sign_reversing_involution<an::AndrewsObject>(
                [](const an::AndrewsObject &x) { return x; }, an::domain_slice(2, 2, 10),
                an::unmarked(an::enum_P(1, 1, 10)), 10, "andrews-involution");
            negative(p, c, "andrews-involution");
        }
        // telescoping: add one to a single g term
        {
            std::vector<LaurentPoly> f, g, h;
            for (int k = -2; k <= 2; ++k) {
                f.push_back(qtel::weighted_count(mm::enum_family(mm::Family::P, 2, 2, k)));
                h.push_back(qtel::weighted_count(mm::enum_family(mm::Family::G, 2, 2, k - 1)));
                g.push_back((LaurentPoly(1) + LaurentPoly::monomial(1, -1, 3))
                            * qtel::weighted_count(mm::enum_family(mm::Family::P, 2, 1, k)));
            }
            g[3] += LaurentPoly::q_power(1);
            negative(p, qtel::telescoping_sum_check(f, g, h, 4, "macmahon-telescoping"), "telescoping");
        }
        // series comparison: one perturbed coefficient
        {
            auto rhs = qtel::truncate(qtel::rhs_andrews(3), 24);
            rhs.add(11, 1);
            negative(p, an::compare_series("andrews-identity", {{"n", 3}}, an::F_trunc(3, 24), rhs, 24, 24),
                     "series");
        }
        // cancelation: a combined map that never leaves H exhausts its budget
        {
            const auto domain = mm::cancelation_domain(2, 2);
            const auto c = qtel::check_graded_bijection<mm::CancelNode>(
                [](const mm::CancelNode &a) {
                    return qtel::cancelation_psi([](const mm::CancelNode &x) { return mm::CancelNode{mm::Role::H, x.object}; },
                                                 a, [](const mm::CancelNode &x) { return x.role == mm::Role::B; }, 8)
                        .value;
                },
                domain, mm::cancelation_codomain(2, 2), std::nullopt, "macmahon-cancelation");
            negative(p, c, "cancelation");
        }
    });

    std::cout << (failures == 0 ? "all criteria passed" : str(failures, " criteria failed")) << std::endl;
    return failures == 0 ? 0 : 1;
}

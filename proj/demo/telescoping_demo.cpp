// Walks through the two worked instances: MacMahon's identity at n = m = 2
// and the first few sums of the Andrews identity.
#include <iostream>

#include <qtel/andrews.hpp>
#include <qtel/macmahon.hpp>
#include <qtel/render.hpp>

int main()
{
    using namespace qtel;

    std::cout << "MacMahon, n = m = 2\n";
    std::cout << "  enumerated F_{2,2} = " << macmahon::enumerated_F(2, 2) << "\n";
    std::cout << "  product side       = " << macmahon::closed_form_rhs(2, 2) << "\n";
    std::cout << "  " << macmahon::verify_macmahon(2, 2).to_json(false).dump() << "\n\n";

    std::cout << "phi_{2,2,k} on G(2,2,-2) at k = -1:\n";
    for (const auto &p : macmahon::enum_family(macmahon::Family::G, 2, 2, -2)) {
        const auto step = macmahon::phi_step(2, 2, -1, macmahon::MacObject(p));
        std::cout << render_diagram(p) << "  --" << to_string(step.rule) << "-->\n"
                  << render_diagram(step.value) << "\n";
    }

    std::cout << "Andrews sums F_n from enumeration (cap n^2 + 15):\n";
    for (int n = 0; n <= 4; ++n) {
        std::cout << "  F_" << n << " = " << andrews::F_trunc(n, n * n + 15).to_poly() << "\n";
    }
    std::cout << "\nphi_{3,1} on ((1,0), (4), ()):\n";
    const andrews::AndrewsObject x(andrews::Triple{{1, 0}, {4}, {}});
    const auto step = andrews::phi_step(3, 1, x);
    std::cout << render_diagram(x) << "  --" << to_string(step.rule) << "-->\n" << render_diagram(step.value);
    return 0;
}

// qharm_calibrate: reruns the SU_q(2) convention search and writes the frozen
// choice as a C++ fragment.  Usage: qharm_calibrate [OUTPUT.inc]
// Exit 1 when the search does not select exactly one candidate or when the
// selection differs between deformation parameters.

#include <fstream>
#include <iostream>

#include "qharm/matrixel.hpp"

using namespace qharm;

int main(int argc, char** argv) {
    const double q_main = 0.7;
    const CalibrationReport rep = calibrate_su_convention(q_main);
    int gen = 0, cou = 0;
    for (auto& r : rep.rows) {
        gen += r.generators_ok;
        cou += r.counit_ok;
    }
    std::cerr << "candidates " << rep.rows.size() << ", generator test " << gen << ", counit test " << cou
              << ", corepresentation test " << rep.passing << "\n";
    if (!rep.selected) {
        std::cerr << "no unique convention\n";
        return 1;
    }
    for (double q : {0.3, 0.5, 0.9}) {
        const auto other = calibrate_su_convention(q);
        if (!other.selected || !(*other.selected == *rep.selected)) {
            std::cerr << "selection at q=" << q << " differs\n";
            return 1;
        }
    }
    const SuConvention& c = *rep.selected;
    std::ofstream file;
    if (argc > 1) file.open(argv[1]);
    std::ostream& os = argc > 1 ? static_cast<std::ostream&>(file) : std::cout;
    os << "// Generated by qharm_calibrate from calibrate_su_convention(0.7); do not edit.\n"
       << "// " << c.describe() << "\n"
       << "constexpr SuConvention kFrozen{" << std::boolalpha << c.lower_i_minus_j << ", " << c.uppers_swapped << ", "
       << c.lambda_power_alt << ", " << c.second_alt << ", " << c.third_alt << ", " << c.argument << ", "
       << c.v_is_ustar << "};\n";
    std::cerr << c.describe() << "\n";
    return os ? 0 : 1;
}

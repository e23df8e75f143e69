// Builds the length-21 weight-4 codes, checks them and prints their certificates.
#include <iostream>

#include "cacw/certify.hpp"
#include "cacw/io.hpp"
#include "cacw/sim.hpp"

int main() {
    using namespace cacw;

    const auto qr = construct_qr_code(4, {{7, 1}});
    std::cout << "QR code: " << qr.size() << " codewords, valid=" << verify_cac(qr).ok << "\n";

    const auto two = construct_two_channel(4, {{7, 1}}, {{1}});
    const auto cert = certify(two);
    std::cout << "two-channel code: " << two.size() << " codewords, optimal="
              << (cert.matchedTheorem ? *cert.matchedTheorem : std::string("unknown")) << "\n";

    const auto g = exhaustive_guarantee(two, 4);
    std::cout << "every 4 active users succeed: " << (g.holds ? "yes" : "no") << " (" << g.method
              << ", " << g.work << " frames)\n";

    std::cout << to_json(cert).dump(2) << "\n";
}

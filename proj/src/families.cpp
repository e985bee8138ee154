#include "qleak/families.hpp"

#include <array>

#include "qleak/errors.hpp"
#include "qleak/rng.hpp"

namespace qleak {

namespace {

Eigen::MatrixXcd ladder(int n, const double* energies, double qubit_coupling,
                        double stray) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    for (int k = 0; k < n; ++k) m(k, k) = energies[k];
    m(0, 1) = m(1, 0) = qubit_coupling;
    for (int k = 2; k < n; ++k) m(0, k) = m(k, 0) = stray;
    return m;
}

}  // namespace

HermitianOperator family(const std::string& name, double gamma) {
    if (name == "Hm" || name == "Hn") {
        const double g = (name == "Hm") ? 0.5 : 0.01;
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(3, 3);
        m(1, 1) = 1.0;
        m(2, 2) = 1.5;
        m(0, 1) = m(1, 0) = 1.0;
        m(0, 2) = m(2, 0) = g;
        return HermitianOperator(m);
    }
    if (name == "Ha" || name == "Hb") {
        static constexpr std::array<double, 5> kE = {0.0, 1.0, 1.5, 1.7, 2.0};
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(5, 5);
        for (int k = 0; k < 5; ++k) m(k, k) = kE[static_cast<std::size_t>(k)];
        m(0, 1) = m(1, 0) = 1.0;
        if (name == "Hb") {
            m(0, 2) = m(2, 0) = 0.01;
            m(0, 3) = m(3, 0) = 0.005;
        }
        return HermitianOperator(m);
    }
    if (name.size() >= 2 && name[0] == 'H') {
        static constexpr std::array<double, 10> kE = {0.0, 1.0, 1.5, 1.7, 1.9,
                                                      2.2, 2.5, 2.7, 3.0, 3.2};
        int n = 0;
        try {
            n = std::stoi(name.substr(1));
        } catch (...) {
            n = 0;
        }
        if (n >= 3 && n <= 10) {
            return HermitianOperator(ladder(n, kE.data(), 1.0, gamma));
        }
    }
    throw UnknownFamily("family: unknown name '" + name + "'");
}

HermitianOperator random_leaky_hamiltonian(std::uint64_t seed) {
    static constexpr std::array<double, 10> kE = {0.0, 1.0, 1.5, 2.0, 2.4,
                                                  2.5, 2.9, 3.0, 3.3, 4.0};
    SplitMix64 gen(substream_seed(seed, 0x1EA6ULL));
    const int n = 2 + static_cast<int>(gen.next() % 9);  // uniform in [2, 10]
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    for (int k = 0; k < n; ++k) m(k, k) = kE[static_cast<std::size_t>(k)];
    m(0, 1) = m(1, 0) = 1.0;
    for (int k = 2; k < n; ++k) {
        const double a = 0.001 + 0.009 * gen.uniform();
        m(0, k) = m(k, 0) = a;
    }
    return HermitianOperator(m);
}

}  // namespace qleak

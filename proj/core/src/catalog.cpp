#include "rkcert/catalog.hpp"

#include "rkcert/types.hpp"

namespace rkcert {

ComplexMatrix sun_shu_matrix() {
    ComplexMatrix m(3, 3);
    m << 1, 2, 2,
         0, 1, 2,
         0, 0, 1;
    return -m;
}

ComplexMatrix levy_tadmor_matrix() {
    ComplexMatrix m(5, 5);
    m << 1, 2, 2, 2, 2,
         0, 1, 2, 2, 2,
         0, 0, 1, 2, 2,
         0, 0, 0, 1, 2,
         0, 0, 0, 0, 1;
    return -5.0 * m;
}

ComplexMatrix jordan_weight_w() {
    ComplexMatrix w(3, 3);
    w << 1, 0, 0,
         0, 2, 0,
         0, 2, 4;
    return w;
}

ComplexMatrix ww_star_weight() {
    const ComplexMatrix w = jordan_weight_w();
    return w * w.adjoint();
}

ComplexMatrix minus_identity(int n) {
    if (n < 1) throw InputError("minus_identity: dimension must be positive");
    return -ComplexMatrix::Identity(n, n);
}

const std::vector<std::string>& matrix_catalog_names() {
    static const std::vector<std::string> names = {
        "sunshu", "levytadmor", "w", "ww-star", "minus-identity",
    };
    return names;
}

ComplexMatrix matrix_from_catalog(const std::string& name) {
    if (name == "sunshu") return sun_shu_matrix();
    if (name == "levytadmor") return levy_tadmor_matrix();
    if (name == "w") return jordan_weight_w();
    if (name == "ww-star") return ww_star_weight();
    if (name == "minus-identity") return minus_identity();
    throw InputError("matrix_from_catalog: unknown matrix '" + name + "'");
}

}  // namespace rkcert

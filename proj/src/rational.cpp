#include "rational.hpp"

#include <cctype>

namespace cmnf {

Rat rat_from_string(const std::string& s) {
    if (s.empty()) fail_parse("empty rational literal");
    std::string::size_type slash = s.find('/');
    std::string num = slash == std::string::npos ? s : s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    auto check_int = [&](const std::string& t) {
        if (t.empty()) fail_parse("malformed rational '" + s + "'");
        std::size_t start = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (start == t.size()) fail_parse("malformed rational '" + s + "'");
        for (std::size_t k = start; k < t.size(); ++k)
            if (!std::isdigit(static_cast<unsigned char>(t[k]))) fail_parse("malformed rational '" + s + "'");
    };
    check_int(num);
    check_int(den);
    mpz_class zn(num, 10), zd(den, 10);
    if (sgn(zd) == 0) fail_parse("rational '" + s + "' has zero denominator");
    Rat r(zn, zd);
    r.canonicalize();
    return r;
}

std::string rat_to_string(const Rat& r) {
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

mpz_class factorial(long k) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(k));
    return f;
}

Rat multiindex_factorial(const std::vector<int>& a) {
    mpz_class f(1);
    for (int e : a) f *= factorial(e);
    return Rat(f);
}

GaussRat GaussRat::i_pow(long k) {
    switch (((k % 4) + 4) % 4) {
        case 0: return GaussRat(1);
        case 1: return GaussRat(Rat(0), Rat(1));
        case 2: return GaussRat(-1);
        default: return GaussRat(Rat(0), Rat(-1));
    }
}

std::string gauss_to_string(const GaussRat& c) {
    return rat_to_string(c.re) + " " + rat_to_string(c.im);
}

}  // namespace cmnf

#include "affineproj/csv.hpp"

#include <cstdio>

namespace affineproj {

namespace {

void append_double(std::string& out, double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
    out += buf;
}

}  // namespace

std::string to_csv(const EmpiricalDirectionMeasure& m) {
    std::string out = "theta,weight\n";
    for (const DirectionAtom& a : m.atoms()) {
        append_double(out, a.theta.theta(), 12);
        out += ',';
        append_double(out, a.weight, 12);
        out += '\n';
    }
    return out;
}

std::string to_csv(const std::vector<ThetaScanRow>& rows) {
    std::string out = "theta,beta_hat,stderr,r_min,r_max,n_atoms,is_near_exceptional\n";
    for (const ThetaScanRow& row : rows) {
        append_double(out, row.theta.theta(), 9);
        out += ',';
        append_double(out, row.beta_hat, 9);
        out += ',';
        append_double(out, row.std_err, 9);
        out += ',';
        append_double(out, row.r_min, 9);
        out += ',';
        append_double(out, row.r_max, 9);
        out += ',';
        out += std::to_string(row.n_atoms);
        out += ',';
        out += row.near_exceptional ? '1' : '0';
        out += '\n';
    }
    return out;
}

std::string points_to_csv(const std::vector<Vec2>& points) {
    std::string out = "x,y\n";
    for (const Vec2& p : points) {
        append_double(out, p.x, 12);
        out += ',';
        append_double(out, p.y, 12);
        out += '\n';
    }
    return out;
}

}  // namespace affineproj

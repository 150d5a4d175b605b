// Copyright 2026 The qseal authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace qseal {

// ---------------------------------------------------------------------------
// Error types
// ---------------------------------------------------------------------------

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ChannelNotTracePreserving : Error {
    using Error::Error;
};
struct ZeroProbabilityOutcome : Error {
    using Error::Error;
};
struct ExplosionError : Error {
    using Error::Error;
};
struct DomainError : Error {
    using Error::Error;
};
struct LengthMismatch : Error {
    using Error::Error;
};
struct EmptyCandidateSet : Error {
    using Error::Error;
};
struct TransportError : Error {
    using Error::Error;
};
struct VersionMismatch : Error {
    using Error::Error;
};
struct ConfigError : Error {
    using Error::Error;
};
struct ParseError : Error {
    using Error::Error;
};

// ---------------------------------------------------------------------------
// Small fixed-size linear algebra: 3-vectors, 3x3 real matrices, 2x2 complex
// matrices. Everything here is a value type.
// ---------------------------------------------------------------------------

using cplx = std::complex<double>;

struct Vec3 {
    std::array<double, 3> v{0.0, 0.0, 0.0};

    double& operator[](std::size_t i) { return v[i]; }
    double operator[](std::size_t i) const { return v[i]; }

    friend Vec3 operator+(const Vec3& a, const Vec3& b) {
        return Vec3{{a[0] + b[0], a[1] + b[1], a[2] + b[2]}};
    }
    friend Vec3 operator-(const Vec3& a, const Vec3& b) {
        return Vec3{{a[0] - b[0], a[1] - b[1], a[2] - b[2]}};
    }
    friend Vec3 operator*(double s, const Vec3& a) {
        return Vec3{{s * a[0], s * a[1], s * a[2]}};
    }
    friend bool operator==(const Vec3& a, const Vec3& b) { return a.v == b.v; }
};

inline double dot(const Vec3& a, const Vec3& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

/// Row-major 3x3 real matrix.
struct Mat3 {
    std::array<double, 9> m{};

    double& operator()(std::size_t r, std::size_t c) { return m[3 * r + c]; }
    double operator()(std::size_t r, std::size_t c) const { return m[3 * r + c]; }

    static Mat3 identity() {
        Mat3 out;
        out(0, 0) = out(1, 1) = out(2, 2) = 1.0;
        return out;
    }
    static Mat3 zero() { return Mat3{}; }
    static Mat3 diagonal(double a, double b, double c) {
        Mat3 out;
        out(0, 0) = a;
        out(1, 1) = b;
        out(2, 2) = c;
        return out;
    }

    Vec3 apply(const Vec3& x) const {
        Vec3 out;
        for (std::size_t r = 0; r < 3; ++r)
            out[r] = m[3 * r] * x[0] + m[3 * r + 1] * x[1] + m[3 * r + 2] * x[2];
        return out;
    }

    friend Mat3 operator*(const Mat3& a, const Mat3& b) {
        Mat3 out;
        for (std::size_t r = 0; r < 3; ++r)
            for (std::size_t c = 0; c < 3; ++c)
                for (std::size_t k = 0; k < 3; ++k) out(r, c) += a(r, k) * b(k, c);
        return out;
    }
    friend bool operator==(const Mat3& a, const Mat3& b) { return a.m == b.m; }
};

/// Row-major 2x2 complex matrix, the boundary representation for Kraus
/// operators and POVM elements.
struct CMat2 {
    std::array<cplx, 4> m{};

    cplx& operator()(std::size_t r, std::size_t c) { return m[2 * r + c]; }
    cplx operator()(std::size_t r, std::size_t c) const { return m[2 * r + c]; }

    static CMat2 identity() { return CMat2{{cplx(1), cplx(0), cplx(0), cplx(1)}}; }
    static CMat2 zero() { return CMat2{}; }
    static CMat2 pauli_x() { return CMat2{{cplx(0), cplx(1), cplx(1), cplx(0)}}; }
    static CMat2 pauli_y() {
        return CMat2{{cplx(0), cplx(0, -1), cplx(0, 1), cplx(0)}};
    }
    static CMat2 pauli_z() { return CMat2{{cplx(1), cplx(0), cplx(0), cplx(-1)}}; }

    CMat2 adjoint() const {
        CMat2 out;
        out(0, 0) = std::conj((*this)(0, 0));
        out(0, 1) = std::conj((*this)(1, 0));
        out(1, 0) = std::conj((*this)(0, 1));
        out(1, 1) = std::conj((*this)(1, 1));
        return out;
    }

    cplx trace() const { return m[0] + m[3]; }

    friend CMat2 operator*(const CMat2& a, const CMat2& b) {
        CMat2 out;
        out(0, 0) = a(0, 0) * b(0, 0) + a(0, 1) * b(1, 0);
        out(0, 1) = a(0, 0) * b(0, 1) + a(0, 1) * b(1, 1);
        out(1, 0) = a(1, 0) * b(0, 0) + a(1, 1) * b(1, 0);
        out(1, 1) = a(1, 0) * b(0, 1) + a(1, 1) * b(1, 1);
        return out;
    }
    friend CMat2 operator*(cplx s, const CMat2& a) {
        CMat2 out;
        for (std::size_t i = 0; i < 4; ++i) out.m[i] = s * a.m[i];
        return out;
    }
    friend CMat2 operator+(const CMat2& a, const CMat2& b) {
        CMat2 out;
        for (std::size_t i = 0; i < 4; ++i) out.m[i] = a.m[i] + b.m[i];
        return out;
    }
};

/// Max elementwise absolute deviation from the identity.
inline double deviation_from_identity(const CMat2& a) {
    double d = 0.0;
    d = std::max(d, std::abs(a(0, 0) - cplx(1)));
    d = std::max(d, std::abs(a(0, 1)));
    d = std::max(d, std::abs(a(1, 0)));
    d = std::max(d, std::abs(a(1, 1) - cplx(1)));
    return d;
}

/// rho = (I + r . sigma) / 2.
inline CMat2 density_from_bloch(const Vec3& r) {
    CMat2 rho;
    rho(0, 0) = cplx(0.5 * (1.0 + r[2]), 0.0);
    rho(0, 1) = cplx(0.5 * r[0], -0.5 * r[1]);
    rho(1, 0) = cplx(0.5 * r[0], 0.5 * r[1]);
    rho(1, 1) = cplx(0.5 * (1.0 - r[2]), 0.0);
    return rho;
}

/// r_i = Tr(sigma_i rho). Ignores any non-hermitian residue.
inline Vec3 bloch_from_density(const CMat2& rho) {
    Vec3 r;
    r[0] = std::real(rho(0, 1) + rho(1, 0));
    r[1] = std::imag(rho(0, 1) - rho(1, 0));
    r[2] = std::real(rho(0, 0) - rho(1, 1));
    return r;
}

/// log2 with the 0*log(0) := 0 convention, as a guarded building block:
/// returns x*log2(x) for x > 0, and 0 for x <= 0.
inline double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

}  // namespace qseal

#pragma once

// Shared polynomial data for the vector transcendentals. Fits were generated
// offline against libm on dense grids; max abs errors: erf small branch
// 1.4e-15, erf large branch < 1e-15 (on erf), log 2.5e-14, exp ~1 ulp.
// The scalar tier intentionally does NOT use these (it calls libm), so the
// equivalence tests certify these fits against an independent reference.

namespace mot::simd::poly {

// exp(r) Taylor on |r| <= ln2/2, c[k] = 1/k!, Horner from c13 down.
inline constexpr double kExpC[14] = {
    1.0,
    1.0,
    0.5,
    1.6666666666666666e-01,
    4.1666666666666664e-02,
    8.3333333333333332e-03,
    1.3888888888888889e-03,
    1.9841269841269841e-04,
    2.4801587301587302e-05,
    2.7557319223985893e-06,
    2.7557319223985888e-07,
    2.5052108385441720e-08,
    2.0876756987868100e-09,
    1.6059043836821613e-10,
};
// Argument reduction: r = x - n*C1 - n*C2, n = round(x/ln2).
inline constexpr double kExpC1 = 6.93145751953125e-01;
inline constexpr double kExpC2 = 1.42860682030941723212e-06;
inline constexpr double kLog2E = 1.4426950408889634074;
inline constexpr double kExpClamp = 706.0;

// erf(x) = x * A(x^2) for |x| <= 1.
inline constexpr double kErfA[11] = {
    1.12837916709551,
    -0.37612638903164325,
    0.1128379167038083,
    -0.02686617056844699,
    0.005223977065091755,
    -0.0008548302257663107,
    0.00012054634337999636,
    -1.4912761660321997e-05,
    1.6306676122079882e-06,
    -1.5174555336638837e-07,
    9.407383230280962e-09,
};

// erfc(x)*exp(x^2) = B(s), s = (2/x - 1.16)/0.84 clamped to [-1,1],
// valid for x in [1, 6.25]; beyond 6.25 the exp(-x^2) factor is < 1e-17.
inline constexpr double kErfB[23] = {
    0.2883972401759716,
    0.1671833785551339,
    -0.03139470785633031,
    0.0028549927239632303,
    0.0010986896664035805,
    -0.000781743031463781,
    0.0002818518618607919,
    -5.815699262914677e-05,
    -5.168780948132205e-06,
    1.2259686491280809e-05,
    -7.283812242267468e-06,
    2.890567062646663e-06,
    -7.366339220166625e-07,
    -1.766757617387206e-08,
    1.686315602212151e-07,
    -1.1005474057565383e-07,
    3.894240638683729e-08,
    -2.5323137511007865e-08,
    1.9822083151428544e-08,
    2.0643194777797074e-09,
    -8.640454186877737e-09,
    1.6568434560788456e-09,
    5.951515699651115e-10,
};
inline constexpr double kErfBScale = 2.0 / 0.84;     // s = u*kErfBScale + kErfBShift
inline constexpr double kErfBShift = -1.16 / 0.84;

// ln(m) = t*L(t), t = m-1, m in [sqrt(1/2), sqrt(2)].
inline constexpr double kLogL[17] = {
    0.9999999999999979,
    -0.5000000000003672,
    0.3333333333364209,
    -0.2499999998501568,
    0.1999999992096015,
    -0.16666668400991813,
    0.14285722303823423,
    -0.12499914440689339,
    0.11110708857150908,
    -0.1000202221163102,
    0.09101717553794296,
    -0.08312279654292873,
    0.07536405892711485,
    -0.0716318512265,
    0.07758560191466458,
    -0.07430055439403609,
    0.035979433809040826,
};
inline constexpr double kLn2Hi = 6.93145751953125e-01;
inline constexpr double kLn2Lo = 1.42860682030941723212e-06;

}  // namespace mot::simd::poly

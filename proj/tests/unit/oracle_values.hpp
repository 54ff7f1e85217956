// Generated by tests/oracles/generate.py; do not edit by hand.
#pragma once

namespace oracle {

// N = 2 sectors (2J, multiplicity): [(2, 1), (0, 1)]
inline constexpr int kSectors2[][2] = {{2, 1}, {0, 1}};
// N = 3 sectors (2J, multiplicity): [(3, 1), (1, 2)]
inline constexpr int kSectors3[][2] = {{3, 1}, {1, 2}};
// N = 4 sectors (2J, multiplicity): [(4, 1), (2, 3), (0, 2)]
inline constexpr int kSectors4[][2] = {{4, 1}, {2, 3}, {0, 2}};
inline constexpr double kPolaronGround_g05 = -0.0625000000000029;
// exact, full product space: eps=1.0 omega=1.0 g=0.4 N=1 n_max=60 beta=5.0
inline constexpr double kExact_N1_g04_b5_ln_z = 2.6217227877402984;
inline constexpr double kExact_N1_g04_b5_mean = -0.48045169327046927;
inline constexpr double kExact_N1_g04_b5_mean2 = 0.25;
inline constexpr double kExact_N1_g04_b5_dmean = -0.04996904768738338;
inline constexpr double kExact_N1_g04_b5_snr_op = 0.13027671518639192;
inline constexpr double kExact_N1_g04_b5_snr_fe = 0.24984523843691686;
// exact, full product space: eps=1.0 omega=1.0 g=0.3 N=2 n_max=60 beta=10.0
inline constexpr double kExact_N2_g03_b10_ln_z = 10.233336040877246;
inline constexpr double kExact_N2_g03_b10_mean = -0.9874486749445996;
inline constexpr double kExact_N2_g03_b10_mean2 = 0.9878550641712311;
inline constexpr double kExact_N2_g03_b10_dmean = -0.015335186214354701;
inline constexpr double kExact_N2_g03_b10_snr_op = 0.01837223878057913;
inline constexpr double kExact_N2_g03_b10_snr_fe = 0.153351862143547;
// exact, full product space: eps=0.8 omega=1.0 g=0.3 N=3 n_max=60 beta=2.0
inline constexpr double kExact_N3_e08_g03_b2_ln_z = 3.219709239200637;
inline constexpr double kExact_N3_e08_g03_b2_mean = -0.9711306742462947;
inline constexpr double kExact_N3_e08_g03_b2_mean2 = 1.3795044550078737;
inline constexpr double kExact_N3_e08_g03_b2_dmean = -0.8335945415871292;
inline constexpr double kExact_N3_e08_g03_b2_snr_op = 1.5922650432546805;
inline constexpr double kExact_N3_e08_g03_b2_snr_fe = 1.6671890831742582;
// exact, full product space: eps=0.5 omega=1.0 g=0.8 N=1 n_max=80 beta=1.0
inline constexpr double kExact_N1_e05_g08_b1_ln_z = 1.339740724648467;
inline constexpr double kExact_N1_e05_g08_b1_mean = -0.1106896351882821;
inline constexpr double kExact_N1_e05_g08_b1_mean2 = 0.25000000000000006;
inline constexpr double kExact_N1_e05_g08_b1_dmean = -0.21362038370446057;
inline constexpr double kExact_N1_e05_g08_b1_snr_op = 0.19194149194748295;
inline constexpr double kExact_N1_e05_g08_b1_snr_fe = 0.21362038370446057;
// weak-coupling SNR by brute-force 2^N Gibbs sums: {N, eps, beta, snr}
inline constexpr double kWeakBrute[][4] = {{3, 2.999620419344065, 11.774551886554297, 1.9058219697960017e-13}, {2, 2.513546539972716, 5.3876726043771175, 7.630330569244928e-05}, {6, 2.3687743179831537, 10.4468480626344, 1.1721216031558451e-08}, {1, 2.8119791307908035, 12.925290283734894, 2.7426278307334555e-14}, {2, 1.5495355310329983, 13.579023515412628, 2.6834837125219957e-07}, {2, 2.3575170288765657, 5.798203862575695, 7.781914357769033e-05}, {1, 1.2932595933328368, 16.955115853310996, 8.623178283252653e-08}, {5, 1.803527123879856, 3.221784769527239, 0.1545481172474789}, {1, 1.956674087363665, 2.6492825026712583, 0.03891455540802376}, {6, 2.770462199818903, 17.96934976770473, 4.640429752389564e-19}, {2, 2.6621771476220486, 5.640059184569249, 1.9175042845168536e-05}, {3, 2.095763101115069, 1.1862978904109673, 0.2994526915867814}};
// F_n(m, lambda) from the Laguerre series: {n, m, lambda, value}
inline constexpr double kFCoeff[][4] = {{0, 0, 0.7, 0.7827045382418681}, {1, 0, 0.7, 0.5478931767693077}, {0, 1, 1.0, 0.0}, {1, 3, 0.45, 0.29133998924694837}, {0, 7, 0.9, -0.2078140291909976}, {1, 12, 1.3, 0.054708037382836146}, {1, 40, 0.6, 0.02769242243229472}, {0, 25, 2.0, 0.1632833718915633}};
inline constexpr double kLambdaRoot_e1_g05 = 0.2540329462184166;
inline constexpr double kLambdaClosed_e1_g05 = 0.2539059321396022;
inline constexpr double kLambdaRoot_e2_g09 = 0.30966459465959967;
inline constexpr double kGrwaGround_N1_e1_g03 = -0.5112818802914739;
inline constexpr double kGrwaGround_N3_e1_g03 = -1.5338456408744219;
// lowest GRWA levels, N = 1, eps = omega = 1, g = 0.3, root lambda
inline constexpr double kGrwaLevels_N1_g03[] = {-0.5112818802914739, 0.3391132867594218, 0.6382587079659393, 1.2776967916607922, 1.699547200551971, 2.230966175270488};
inline constexpr double kExactLevels_N1_g03[] = {-0.5113136371728265, 0.3390618580834013, 0.6381776890911118, 1.2776077267598132, 1.69935841375549, 2.2308737485677472};
// Dicke closed forms
inline constexpr double kDickeTc_e3_g098 = 1.4316583160973522;
inline constexpr double kDickeTc_e05_g09 = 1.6070572129096492;
inline constexpr double kDickeEta_e05_g09_b3 = 6.4792206290134;
inline constexpr double kDickeEta_e3_g098_b20 = 1.2805333333333333;
inline constexpr double kDickeSnrSuper_e05_g09 = 0.09758382450525;
inline constexpr double kHpNormalMinus_e1_g03 = 0.6324555320336759;
inline constexpr double kHpNormalPlus_e1_g03 = 1.2649110640673518;
// Cauchy transforms at the real axis (delta -> 0+)
inline constexpr double kOhmicW_re_x07_wc100 = 3.1822590033294755;
inline constexpr double kOhmicW_im_x07_wc100 = 0.034755855502663226;
inline constexpr double kOhmicW_re_x25_wc100 = 3.174917941831571;
inline constexpr double kLorentzW_iy08_re = 0.5952380952380952;
inline constexpr double kLorentzW_iy08_im = 0.0;
// k_B T / h at 45 mK in GHz
inline constexpr double kThermalGHz_45mK = 0.9376478605497408;

}  // namespace oracle

#pragma once
// Frozen reference values; generated by tests/tools/gen_reference.py.
#include <complex>

namespace refvals {

inline const std::complex<double> kFreeDyn3dSimple[3][3] = {
  {{-7.93565416964738674e-02, -5.80984082885503423e-03}, {0.00000000000000000e+00, 0.00000000000000000e+00}, {0.00000000000000000e+00, 0.00000000000000000e+00}},
  {{0.00000000000000000e+00, 0.00000000000000000e+00}, {-5.27424580129467677e-02, -5.80487969789230274e-03}, {0.00000000000000000e+00, 0.00000000000000000e+00}},
  {{0.00000000000000000e+00, 0.00000000000000000e+00}, {0.00000000000000000e+00, 0.00000000000000000e+00}, {-5.27424580129467677e-02, -5.80487969789230274e-03}},
};

inline const std::complex<double> kFreeDyn3dGeneric[3][3] = {
  {{-1.45543346023312675e-01, -2.25811254580018834e-02}, {1.83493573720440450e-02, 1.38686341529107465e-04}, {-2.75240360580660676e-02, -2.08029512293661197e-04}},
  {{1.83493573720440450e-02, 1.38686341529107465e-04}, {-1.18019309965246594e-01, -2.23730959457082226e-02}, {1.37620180290330338e-02, 1.04014756146830599e-04}},
  {{-2.75240360580660676e-02, -2.08029512293661197e-04}, {1.37620180290330338e-02, 1.04014756146830599e-04}, {-1.29487658322774118e-01, -2.24597749091639126e-02}},
};

inline const std::complex<double> kFreeDyn3dGenericGrad0[3][3] = {
  {{1.33817894197270332e-01, 1.33859489987585723e-03}, {-2.96650050424538021e-02, 1.69440615566519880e-04}, {4.44975075636806980e-02, -2.54160923349779847e-04}},
  {{-2.96650050424538021e-02, 1.69440615566519880e-04}, {2.04003870208864929e-01, 2.45954545778255844e-03}, {-5.66537988544229335e-02, -1.32956428692186559e-04}},
  {{4.44975075636806980e-02, -2.54160923349779847e-04}, {-5.66537988544229335e-02, -1.32956428692186559e-04}, {2.51215369254217391e-01, 2.57034248169271413e-03}},
};

inline const std::complex<double> kFreeDyn3dGenericGrad1[3][3] = {
  {{-1.58655733958855405e-01, -1.36272915758346583e-03}, {-5.39775876239382696e-02, -6.04794088517412879e-04}, {-5.66537988544229335e-02, -1.32956428692186559e-04}},
  {{-5.39775876239382696e-02, -6.04794088517412879e-04}, {-1.02551482442122376e-02, -5.36341021245742003e-04}, {-4.04831907179536987e-02, -4.53595566388059659e-04}},
  {{-5.66537988544229335e-02, -1.32956428692186559e-04}, {-4.04831907179536987e-02, -4.53595566388059659e-04}, {-1.25607684627108696e-01, -1.28517124084635706e-03}},
};

inline const std::complex<double> kFreeDyn3dGenericGrad2[3][3] = {
  {{2.37983600938283107e-01, 2.04409373637519896e-03}, {-5.66537988544229335e-02, -1.32956428692186559e-04}, {-6.76608857858582331e-03, -4.93997064607257404e-04}},
  {{-5.66537988544229335e-02, -1.32956428692186559e-04}, {1.53002902656648704e-01, 1.84465909333691894e-03}, {3.38304428929291166e-03, 2.46998532303628702e-04}},
  {{-6.76608857858582331e-03, -4.93997064607257404e-04}, {3.38304428929291166e-03, 2.46998532303628702e-04}, {5.07913466503326916e-02, 8.87609299801229664e-04}},
};

inline const std::complex<double> kFreeDyn2dSimple[2][2] = {
  {{-2.97493000721650580e-01, -1.66454249462567150e-01}, {-1.60658667422073596e-02, -7.49390800754665571e-05}},
  {{-1.60658667422073596e-02, -7.49390800754665571e-05}, {-2.54650689409097630e-01, -1.66254411915699229e-01}},
};

inline const std::complex<double> kFreeDyn2dGeneric[2][2] = {
  {{-1.54856160761745187e-01, -1.95813815173310118e-01}, {3.25067294577226149e-02, 1.52456149617097498e-03}},
  {{3.25067294577226149e-02, 1.52456149617097498e-03}, {-1.93167663336918288e-01, -1.97610619793797349e-01}},
};

inline const std::complex<double> kFreeDyn2dGenericGrad0[2][2] = {
  {{-3.11733254936346453e-02, -5.85476750105282887e-03}, {-8.59431029791101336e-02, -7.58962184311872626e-03}},
  {{-8.59431029791101336e-02, -7.58962184311872626e-03}, {-3.07193492473963825e-01, -1.46056591236474326e-02}},
};

inline const std::complex<double> kFreeDyn2dGenericGrad1[2][2] = {
  {{3.79620614191086836e-01, 2.54914580885521984e-02}, {-4.11570826624227046e-02, 4.29781512302166834e-03}},
  {{-4.11570826624227046e-02, 4.29781512302166834e-03}, {2.12521317252210490e-01, 1.03142885046732576e-02}},
};

inline const std::complex<double> kDelta0_2d_k03[2][2] = {
  {{-1.28091172130840453e-01, -1.66666666666666657e-01}, {-1.56011990460134353e-18, -1.20000000000000011e-19}},
  {{-1.56011990460134353e-18, -1.20000000000000011e-19}, {-1.28091172130840453e-01, -1.66666666666666657e-01}},
};

inline const std::complex<double> kDelta0_2d_generic[2][2] = {
  {{-2.84500136088279218e-02, -2.00892857142857151e-01}, {-1.30768913199076795e-17, -1.05468750000000000e-18}},
  {{-1.30768913199076795e-17, -1.05468750000000000e-18}, {-2.84500136088279287e-02, -2.00892857142857151e-01}},
};

inline const std::complex<double> kDelta0_3d_k03[3][3] = {
  {{2.60186500966630505e-11, -1.74469634631389571e-02}, {-2.29183118052329277e-12, -3.86065825513946692e-21}, {-2.44461992589151218e-12, -4.11803547214876451e-21}},
  {{-2.29183118052329277e-12, -3.86065825513946692e-21}, {2.49873260654275663e-11, -1.74469634631389571e-02}, {-3.05577490736439062e-12, -5.14754434018595564e-21}},
  {{-2.44461992589151218e-12, -4.11803547214876451e-21}, {-3.05577490736439062e-12, -5.14754434018595564e-21}, {2.45926218065596656e-11, -1.74469634631389571e-02}},
};

// complex k handled by the closed form below; frozen anyway
inline const std::complex<double> kDelta0_3d_generic[3][3] = {
  {{3.99017181733080269e-03, -1.99508589416795175e-02}, {-2.46649560805529395e-12, -1.02770650785009009e-12}, {-2.63092864859231390e-12, -1.09622027504009615e-12}},
  {{-2.46649560805529395e-12, -1.02770650785009009e-12}, {3.99017181622087977e-03, -1.99508589421419844e-02}, {-3.28866081074039247e-12, -1.37027534380012019e-12}},
  {{-2.63092864859231390e-12, -1.09622027504009615e-12}, {-3.28866081074039247e-12, -1.37027534380012019e-12}, {3.99017181579609456e-03, -1.99508589423189782e-02}},
};

inline const std::complex<double> kQuasiStatic2d[2][2] = {
  {{-6.79124234414951455e-02, -6.51794808484109190e-17}, {-2.32200654947612578e-02, -9.65106556226565263e-18}},
  {{-2.32200654947612578e-02, -9.65106556226565263e-18}, {-4.46923579467339085e-02, -5.76888492151553500e-17}},
};

}  // namespace refvals

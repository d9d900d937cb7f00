// Generated by tests/oracles/airy_reference.py (mpmath, 40 digits). Do not edit.
#pragma once

#include <array>

namespace airy_ref {

struct Point { double x; double ai; double ai_prime; };

inline constexpr std::array<Point, 36> kPoints{{
    {-100.0, 0.17675339323955287809, -0.2422970316605838054},
    {-80.0, 0.054125898466835086651, -1.6162101034276570374},
    {-50.5, 0.20218238767504868624, -0.44362223851068006522},
    {-30.0, -0.087968188456842162833, 1.2286206026374851347},
    {-20.0, -0.17640612707798468959, 0.8928628567364712384},
    {-12.5, -0.27627456138116024823, -0.41933133041950516441},
    {-10.0, 0.040241238486443190689, 0.9962650441327900559},
    {-8.0099999999999997868, -0.062038322196627328156, 0.93096795054099720808},
    {-8.0, -0.052705050356386202622, 0.93556093819830655103},
    {-7.9900000000000002132, -0.043329615727578124825, 0.93940025790068412569},
    {-6.0, -0.32914517362982310523, 0.34593548728134289493},
    {-5.0, 0.35076100902411431979, 0.32719281855444313679},
    {-4.2000000000000001776, 0.089210763239450717957, -0.78221560786245189744},
    {-3.0, -0.37881429367765807435, 0.31458376921659881365},
    {-2.5, -0.11232506769296608919, 0.67885273426479436337},
    {-1.0, 0.5355608832923521188, -0.010160567116645209395},
    {-0.2999999999999999889, 0.4309030952855808556, -0.24054512725815461017},
    {0.0, 0.35502805388781723926, -0.25881940379280679841},
    {0.25, 0.29116395434854520627, -0.2490621120048971418},
    {1.0, 0.13529241631288141552, -0.15914744129679321279},
    {2.0, 0.034924130423274379135, -0.053090384433653631704},
    {2.7000000000000001776, 0.011198535451065877517, -0.019325560692377632169},
    {3.5, 0.0025840987869896349633, -0.005004413967952582832},
    {4.9900000000000002132, 0.00011084584219839809486, -0.00025288791917022869217},
    {5.0, 0.00010834442813607441735, -0.000247413890868462476},
    {5.0099999999999997868, 0.00010589718813265608177, -0.00024205273841805753458},
    {6.0, 9.9476943602528895702e-6, -0.000024765200397034954754},
    {7.0, 7.4921288639971670808e-7, -2.0081508947387919912e-6},
    {7.9900000000000002132, 4.8282456472987111566e-8, -1.3794946610558306554e-7},
    {8.0, 4.6922076160992316256e-8, -1.3414392979067865743e-7},
    {8.0099999999999997868, 4.559923578891319508e-8, -1.3044102231519768097e-7},
    {10.0, 1.1047532552898685934e-10, -3.5206336767389236366e-10},
    {15.0, 2.164962520737992299e-18, -8.4205679540177727661e-18},
    {25.0, 8.1160268246913866838e-38, -4.0660893372432810053e-37},
    {50.0, 4.5849417240748284783e-104, -3.2443318198287992961e-103},
    {99.0, 5.6735523843347142029e-287, -5.646545153760366396e-286},
}};

struct Zero { int n; double lambda; double ai_prime; };

inline constexpr std::array<Zero, 17> kZeros{{
    {1, -2.3381074104597670385, 0.70121082272069136249},
    {2, -4.0879494441309706166, -0.80311136965486396363},
    {3, -5.5205598280955510591, 0.86520402589415193084},
    {4, -6.7867080900717589988, -0.91085073704960180307},
    {5, -7.9441335871208531231, 0.94733570944156776559},
    {6, -9.0226508533409803802, -0.97792280856949861095},
    {7, -10.040174341558085931, 1.0043701226603119685},
    {8, -11.008524303733262893, -1.0277386888207861767},
    {9, -11.936015563236262517, 1.048720648588189548},
    {10, -12.8287767528657572, -1.0677938591574278347},
    {20, -20.53733290767756636, -1.20106079151982328},
    {40, -32.738099609000269133, -1.3495512971474446094},
    {41, -33.28488468190140188, 1.3551511807159074662},
    {50, -38.021008677255254433, -1.4009788839497689752},
    {100, -60.455557274116698707, -1.5732012195680693354},
    {150, -79.263284764868568046, -1.683422580629140683},
    {200, -96.047337603081253558, -1.7662266551379700862},
}};

}  // namespace airy_ref

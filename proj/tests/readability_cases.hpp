#pragma once

#include <array>

#include "kgp/readability.hpp"

namespace testing {

struct ReadabilityCase {
  kgp::TextCounts counts;  // letters, words, sentences, syllables, polysyllables, long words, difficult
  std::array<double, 6> expected;  // FRE, FKGL, Fog, SMOG, Coleman-Liau, ARI
};

// Evaluated by hand from the published index definitions.
inline const std::array<ReadabilityCase, 25> kReadabilityCases = {{
    {{45, 10, 1, 15, 3, 1, 2}, {69.785000000000011, 6.0100000000000016, 12, 13.023866798666859, 7.6999999999999993, 4.7650000000000006}},
    {{20, 5, 1, 7, 0, 0, 0}, {83.320000000000036, 2.879999999999999, 2, 3.1291000000000002, 1.8000000000000007, -0.089999999999999858}},
    {{1500, 300, 30, 450, 30, 10, 25}, {69.785000000000011, 6.0100000000000016, 7.333333333333333, 8.8418462747788826, 10.639999999999997, 7.120000000000001}},
    {{1263, 166, 10, 368, 166, 12, 18}, {2.4390120481928079, 17.04303614457832, 10.977349397590363, 26.404597889411516, 27.154457831325292, 22.705722891566261}},
    {{93, 49, 12, 123, 3, 1, 0}, {-9.6728486394557649, 15.622908163265308, 1.6333333333333333, 5.985473137389441, -11.888979591836733, -10.448945578231292}},
    {{1092, 223, 54, 258, 61, 5, 35}, {104.76539902009634, -0.32742650722471289, 7.9298787576814496, 9.2008373040085392, 5.8258295964125537, 3.6990300614515874}},
    {{180, 31, 10, 38, 14, 10, 10}, {99.985274193548392, 0.083516129032258135, 14.143225806451614, 9.8885125484393974, 8.7935483870967737, 7.4683870967741939}},
    {{174, 32, 10, 82, 3, 1, 0}, {-13.200499999999977, 15.895500000000002, 1.2800000000000002, 6.2580999999999998, 6.9224999999999994, 5.7806250000000006}},
    {{361, 69, 10, 176, 18, 17, 3}, {-15.959804347826037, 17.199550724637678, 4.4991304347826091, 10.793553405168563, 10.673623188405795, 6.6621739130434783}},
    {{542, 158, 36, 250, 26, 18, 18}, {68.519518284106908, 4.792552742616035, 6.3125175808720115, 7.9840007885503352, -2.3736708860759528, -3.0784669479606208}},
    {{313, 191, 7, 471, 182, 16, 144}, {-29.480942408376961, 24.149857890800302, 41.07135377711294, 32.258504731302004, -7.2490052356020946, -0.068661181750186984}},
    {{2224, 317, 27, 825, 272, 218, 160}, {-25.255353429138864, 19.698668068699615, 24.885570744245825, 21.261174956336969, 22.931608832807573, 17.484660591190554}},
    {{1299, 300, 59, 670, 153, 63, 46}, {12.733983050847456, 12.746384180790962, 8.1672316384180785, 12.328608931256667, 3.8390666666666675, 1.5066728813559322}},
    {{271, 42, 10, 80, 33, 31, 21}, {41.429142857142892, 8.5241904761904799, 21.680000000000003, 13.506818969022046, 15.092380952380957, 11.060714285714283}},
    {{485, 148, 39, 185, 30, 16, 13}, {97.233205128205128, 0.64000000000000057, 5.0314622314622319, 8.1395099325611753, -4.3310810810810807, -4.0977668052668044}},
    {{705, 388, 88, 543, 250, 107, 10}, {83.96338097469544, 2.6434629803186489, 2.79456419868791, 12.757931881858305, -11.829381443298971, -10.667335988753514}},
    {{2426, 392, 81, 740, 355, 179, 304}, {42.218819601914873, 8.5729176114890429, 32.95621063240111, 15.088698578052195, 14.473673469387755, 10.138885739480976}},
    {{563, 297, 59, 367, 47, 17, 30}, {97.186199280945061, 0.95436512012783226, 6.0539633624379388, 8.2278986122355917, -10.533872053872056, -9.9846670090737888}},
    {{37, 32, 5, 89, 18, 12, 11}, {-34.95474999999999, 19.724750000000004, 16.309999999999999, 13.968273953766033, -13.626250000000001, -12.784062499999999}},
    {{357, 237, 46, 323, 156, 29, 126}, {86.306809301045689, 2.5012043661713435, 23.326692350027514, 13.649404715375301, -12.687932489451477, -11.759102916895982}},
    {{512, 112, 19, 145, 94, 31, 50}, {91.325056390977451, 1.9857330827067692, 20.215037593984963, 15.835779097396397, 6.0585714285714225, 3.0487969924812006}},
    {{824, 255, 11, 340, 229, 102, 140}, {70.505454545454569, 9.1842424242424237, 31.233511586452767, 29.194616457224054, 1.9236078431372512, 5.3806737967914451}},
    {{420, 71, 14, 211, 35, 26, 22}, {-49.729401408450684, 21.45546277665996, 14.422937625754527, 12.161744961471694, 13.146478873239438, 8.9676861167002002}},
    {{670, 195, 30, 272, 21, 5, 4}, {82.231346153846175, 3.4044871794871803, 3.4205128205128208, 7.9087264498389409, -0.15076923076923343, -1.9969230769230784}},
    {{1084, 338, 30, 350, 248, 212, 150}, {107.79578303747536, 1.0229349112426043, 22.258145956607496, 19.554280425188637, 0.43053254437869626, -0.69122287968441753}},
}};

}  // namespace testing

#pragma once

#include <Eigen/Core>
#include <cmath>
#include <cstdlib>
#include <type_traits>

namespace fowler6 {

template <typename S>
S coefficient(const char* text) {
  if constexpr (std::is_same_v<S, double>)
    return std::strtod(text, nullptr);
  else
    return S(text);
}

// Dormand-Prince 8(5,3) tableau with the 7th-order dense output stages
// (Hairer, Norsett & Wanner, DOP853).
template <typename S>
struct Dop853Tableau {
  S c2 = coefficient<S>("0.526001519587677318785587544488E-01");
  S c3 = coefficient<S>("0.789002279381515978178381316732E-01");
  S c4 = coefficient<S>("0.118350341907227396726757197510E+00");
  S c5 = coefficient<S>("0.281649658092772603273242802490E+00");
  S c6 = coefficient<S>("0.333333333333333333333333333333E+00");
  S c7 = coefficient<S>("0.25E+00");
  S c8 = coefficient<S>("0.307692307692307692307692307692E+00");
  S c9 = coefficient<S>("0.651282051282051282051282051282E+00");
  S c10 = coefficient<S>("0.6E+00");
  S c11 = coefficient<S>("0.857142857142857142857142857142E+00");
  S b1 = coefficient<S>("5.42937341165687622380535766363E-2");
  S b6 = coefficient<S>("4.45031289275240888144113950566E0");
  S b7 = coefficient<S>("1.89151789931450038304281599044E0");
  S b8 = coefficient<S>("-5.8012039600105847814672114227E0");
  S b9 = coefficient<S>("3.1116436695781989440891606237E-1");
  S b10 = coefficient<S>("-1.52160949662516078556178806805E-1");
  S b11 = coefficient<S>("2.01365400804030348374776537501E-1");
  S b12 = coefficient<S>("4.47106157277725905176885569043E-2");
  S a21 = coefficient<S>("5.26001519587677318785587544488E-2");
  S a31 = coefficient<S>("1.97250569845378994544595329183E-2");
  S a32 = coefficient<S>("5.91751709536136983633785987549E-2");
  S a41 = coefficient<S>("2.95875854768068491816892993775E-2");
  S a43 = coefficient<S>("8.87627564304205475450678981324E-2");
  S a51 = coefficient<S>("2.41365134159266685502369798665E-1");
  S a53 = coefficient<S>("-8.84549479328286085344864962717E-1");
  S a54 = coefficient<S>("9.24834003261792003115737966543E-1");
  S a61 = coefficient<S>("3.7037037037037037037037037037E-2");
  S a64 = coefficient<S>("1.70828608729473871279604482173E-1");
  S a65 = coefficient<S>("1.25467687566822425016691814123E-1");
  S a71 = coefficient<S>("3.7109375E-2");
  S a74 = coefficient<S>("1.70252211019544039314978060272E-1");
  S a75 = coefficient<S>("6.02165389804559606850219397283E-2");
  S a76 = coefficient<S>("-1.7578125E-2");
  S a81 = coefficient<S>("3.70920001185047927108779319836E-2");
  S a84 = coefficient<S>("1.70383925712239993810214054705E-1");
  S a85 = coefficient<S>("1.07262030446373284651809199168E-1");
  S a86 = coefficient<S>("-1.53194377486244017527936158236E-2");
  S a87 = coefficient<S>("8.27378916381402288758473766002E-3");
  S a91 = coefficient<S>("6.24110958716075717114429577812E-1");
  S a94 = coefficient<S>("-3.36089262944694129406857109825E0");
  S a95 = coefficient<S>("-8.68219346841726006818189891453E-1");
  S a96 = coefficient<S>("2.75920996994467083049415600797E1");
  S a97 = coefficient<S>("2.01540675504778934086186788979E1");
  S a98 = coefficient<S>("-4.34898841810699588477366255144E1");
  S a101 = coefficient<S>("4.77662536438264365890433908527E-1");
  S a104 = coefficient<S>("-2.48811461997166764192642586468E0");
  S a105 = coefficient<S>("-5.90290826836842996371446475743E-1");
  S a106 = coefficient<S>("2.12300514481811942347288949897E1");
  S a107 = coefficient<S>("1.52792336328824235832596922938E1");
  S a108 = coefficient<S>("-3.32882109689848629194453265587E1");
  S a109 = coefficient<S>("-2.03312017085086261358222928593E-2");
  S a111 = coefficient<S>("-9.3714243008598732571704021658E-1");
  S a114 = coefficient<S>("5.18637242884406370830023853209E0");
  S a115 = coefficient<S>("1.09143734899672957818500254654E0");
  S a116 = coefficient<S>("-8.14978701074692612513997267357E0");
  S a117 = coefficient<S>("-1.85200656599969598641566180701E1");
  S a118 = coefficient<S>("2.27394870993505042818970056734E1");
  S a119 = coefficient<S>("2.49360555267965238987089396762E0");
  S a1110 = coefficient<S>("-3.0467644718982195003823669022E0");
  S a121 = coefficient<S>("2.27331014751653820792359768449E0");
  S a124 = coefficient<S>("-1.05344954667372501984066689879E1");
  S a125 = coefficient<S>("-2.00087205822486249909675718444E0");
  S a126 = coefficient<S>("-1.79589318631187989172765950534E1");
  S a127 = coefficient<S>("2.79488845294199600508499808837E1");
  S a128 = coefficient<S>("-2.85899827713502369474065508674E0");
  S a129 = coefficient<S>("-8.87285693353062954433549289258E0");
  S a1210 = coefficient<S>("1.23605671757943030647266201528E1");
  S a1211 = coefficient<S>("6.43392746015763530355970484046E-1");
  S bhh1 = coefficient<S>("0.244094488188976377952755905512E+00");
  S bhh2 = coefficient<S>("0.733846688281611857341361741547E+00");
  S bhh3 = coefficient<S>("0.220588235294117647058823529412E-01");
  S er1 = coefficient<S>("0.1312004499419488073250102996E-01");
  S er6 = coefficient<S>("-0.1225156446376204440720569753E+01");
  S er7 = coefficient<S>("-0.4957589496572501915214079952E+00");
  S er8 = coefficient<S>("0.1664377182454986536961530415E+01");
  S er9 = coefficient<S>("-0.3503288487499736816886487290E+00");
  S er10 = coefficient<S>("0.3341791187130174790297318841E+00");
  S er11 = coefficient<S>("0.8192320648511571246570742613E-01");
  S er12 = coefficient<S>("-0.2235530786388629525884427845E-01");
  S c14 = coefficient<S>("0.1E+00");
  S c15 = coefficient<S>("0.2E+00");
  S c16 = coefficient<S>("0.777777777777777777777777777778E+00");
  S a141 = coefficient<S>("5.61675022830479523392909219681E-2");
  S a147 = coefficient<S>("2.53500210216624811088794765333E-1");
  S a148 = coefficient<S>("-2.46239037470802489917441475441E-1");
  S a149 = coefficient<S>("-1.24191423263816360469010140626E-1");
  S a1410 = coefficient<S>("1.5329179827876569731206322685E-1");
  S a1411 = coefficient<S>("8.20105229563468988491666602057E-3");
  S a1412 = coefficient<S>("7.56789766054569976138603589584E-3");
  S a1413 = coefficient<S>("-8.298E-3");
  S a151 = coefficient<S>("3.18346481635021405060768473261E-2");
  S a156 = coefficient<S>("2.83009096723667755288322961402E-2");
  S a157 = coefficient<S>("5.35419883074385676223797384372E-2");
  S a158 = coefficient<S>("-5.49237485713909884646569340306E-2");
  S a1511 = coefficient<S>("-1.08347328697249322858509316994E-4");
  S a1512 = coefficient<S>("3.82571090835658412954920192323E-4");
  S a1513 = coefficient<S>("-3.40465008687404560802977114492E-4");
  S a1514 = coefficient<S>("1.41312443674632500278074618366E-1");
  S a161 = coefficient<S>("-4.28896301583791923408573538692E-1");
  S a166 = coefficient<S>("-4.69762141536116384314449447206E0");
  S a167 = coefficient<S>("7.68342119606259904184240953878E0");
  S a168 = coefficient<S>("4.06898981839711007970213554331E0");
  S a169 = coefficient<S>("3.56727187455281109270669543021E-1");
  S a1613 = coefficient<S>("-1.39902416515901462129418009734E-3");
  S a1614 = coefficient<S>("2.9475147891527723389556272149E0");
  S a1615 = coefficient<S>("-9.15095847217987001081870187138E0");
  S d41 = coefficient<S>("-0.84289382761090128651353491142E+01");
  S d46 = coefficient<S>("0.56671495351937776962531783590E+00");
  S d47 = coefficient<S>("-0.30689499459498916912797304727E+01");
  S d48 = coefficient<S>("0.23846676565120698287728149680E+01");
  S d49 = coefficient<S>("0.21170345824450282767155149946E+01");
  S d410 = coefficient<S>("-0.87139158377797299206789907490E+00");
  S d411 = coefficient<S>("0.22404374302607882758541771650E+01");
  S d412 = coefficient<S>("0.63157877876946881815570249290E+00");
  S d413 = coefficient<S>("-0.88990336451333310820698117400E-01");
  S d414 = coefficient<S>("0.18148505520854727256656404962E+02");
  S d415 = coefficient<S>("-0.91946323924783554000451984436E+01");
  S d416 = coefficient<S>("-0.44360363875948939664310572000E+01");
  S d51 = coefficient<S>("0.10427508642579134603413151009E+02");
  S d56 = coefficient<S>("0.24228349177525818288430175319E+03");
  S d57 = coefficient<S>("0.16520045171727028198505394887E+03");
  S d58 = coefficient<S>("-0.37454675472269020279518312152E+03");
  S d59 = coefficient<S>("-0.22113666853125306036270938578E+02");
  S d510 = coefficient<S>("0.77334326684722638389603898808E+01");
  S d511 = coefficient<S>("-0.30674084731089398182061213626E+02");
  S d512 = coefficient<S>("-0.93321305264302278729567221706E+01");
  S d513 = coefficient<S>("0.15697238121770843886131091075E+02");
  S d514 = coefficient<S>("-0.31139403219565177677282850411E+02");
  S d515 = coefficient<S>("-0.93529243588444783865713862664E+01");
  S d516 = coefficient<S>("0.35816841486394083752465898540E+02");
  S d61 = coefficient<S>("0.19985053242002433820987653617E+02");
  S d66 = coefficient<S>("-0.38703730874935176555105901742E+03");
  S d67 = coefficient<S>("-0.18917813819516756882830838328E+03");
  S d68 = coefficient<S>("0.52780815920542364900561016686E+03");
  S d69 = coefficient<S>("-0.11573902539959630126141871134E+02");
  S d610 = coefficient<S>("0.68812326946963000169666922661E+01");
  S d611 = coefficient<S>("-0.10006050966910838403183860980E+01");
  S d612 = coefficient<S>("0.77771377980534432092869265740E+00");
  S d613 = coefficient<S>("-0.27782057523535084065932004339E+01");
  S d614 = coefficient<S>("-0.60196695231264120758267380846E+02");
  S d615 = coefficient<S>("0.84320405506677161018159903784E+02");
  S d616 = coefficient<S>("0.11992291136182789328035130030E+02");
  S d71 = coefficient<S>("-0.25693933462703749003312586129E+02");
  S d76 = coefficient<S>("-0.15418974869023643374053993627E+03");
  S d77 = coefficient<S>("-0.23152937917604549567536039109E+03");
  S d78 = coefficient<S>("0.35763911791061412378285349910E+03");
  S d79 = coefficient<S>("0.93405324183624310003907691704E+02");
  S d710 = coefficient<S>("-0.37458323136451633156875139351E+02");
  S d711 = coefficient<S>("0.10409964950896230045147246184E+03");
  S d712 = coefficient<S>("0.29840293426660503123344363579E+02");
  S d713 = coefficient<S>("-0.43533456590011143754432175058E+02");
  S d714 = coefficient<S>("0.96324553959188282948394950600E+02");
  S d715 = coefficient<S>("-0.39177261675615439165231486172E+02");
  S d716 = coefficient<S>("-0.14972683625798562581422125276E+03");


  static const Dop853Tableau& get() {
    static const Dop853Tableau tableau;
    return tableau;
  }
};

}  // namespace fowler6

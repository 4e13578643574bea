"""Orthogonal scaling-filter coefficient tables.

Generated by tools/generate_filter_coefficients.py; do not edit by hand.
Each entry is the lowpass (scaling) filter h, normalised so that
sum(h) == sqrt(2) and sum(h**2) == 1.
"""

SCALING_FILTERS = {
    "db1": (
        0.70710678118654752,
        0.70710678118654752,
    ),
    "db2": (
        0.48296291314453414,
        0.83651630373780791,
        0.22414386804201338,
        -0.12940952255126038,
    ),
    "db3": (
        0.33267055295008262,
        0.80689150931109258,
        0.45987750211849157,
        -0.13501102001025459,
        -0.085441273882026662,
        0.035226291885709537,
    ),
    "sym4": (
        0.032223100604051468,
        -0.012603967262031304,
        -0.099219543576633533,
        0.29785779560530605,
        0.80373875180513208,
        0.49761866763277499,
        -0.029635527646002492,
        -0.075765714789502213,
    ),
    "sym5": (
        0.019538882735249827,
        -0.021101834024689041,
        -0.17532808990805622,
        0.016602105764510848,
        0.63397896345679206,
        0.72340769040404079,
        0.19939753397685560,
        -0.039134249302313844,
        0.029519490925706261,
        0.027333068344998769,
    ),
    "sym6": (
        -0.0078007083250323804,
        0.0017677118642540077,
        0.044724901770781385,
        -0.021060292512370848,
        -0.072637522786376583,
        0.33792942172816583,
        0.78764114102865100,
        0.49105594192797373,
        -0.048311742585698055,
        -0.11799011114852003,
        0.0034907120842221625,
        0.015404109327044824,
    ),
    "coif1": (
        -0.072732619512526448,
        0.33789766245748177,
        0.85257202021160042,
        0.38486484686485775,
        -0.072732619512526448,
        -0.015655728135791993,
    ),
    "coif2": (
        0.016387336463203640,
        -0.041464936786871774,
        -0.067372554723725594,
        0.38611006682276285,
        0.81272363544941350,
        0.41700518442323905,
        -0.076488599078280754,
        -0.059434418646431087,
        0.023680171946847769,
        0.0056114348193688342,
        -0.0018232088709110321,
        -0.00072054944552034700,
    ),
    "coif3": (
        -0.0037935128643808017,
        0.0077825964256727458,
        0.023452696142077166,
        -0.065771911281469367,
        -0.061123390002972541,
        0.40517690240911820,
        0.79377722262608717,
        0.42848347637736998,
        -0.071799821619154834,
        -0.082301927106299818,
        0.034555027573297733,
        0.015880544863669451,
        -0.0090079761367306239,
        -0.0025745176881367970,
        0.0011175187708306302,
        0.00046621695982040287,
        -7.0983302506379006e-5,
        -3.4599773197272774e-5,
    ),
    "fk4": (
        0.65392755150243299,
        0.75327249628890913,
        0.053179229684114531,
        -0.046165715102361605,
    ),
    "fk6": (
        0.40867740485496487,
        0.83084692584768537,
        0.34442242349801238,
        -0.14636322789415485,
        -0.045993047166429729,
        0.022623083233017009,
    ),
    "fk8": (
        0.43610067885983587,
        0.80128344384741420,
        0.36624972122043258,
        -0.14048213402279837,
        -0.10525474197881271,
        0.051754052144525872,
        0.010011123085091792,
        -0.0054485807825941813,
    ),
}

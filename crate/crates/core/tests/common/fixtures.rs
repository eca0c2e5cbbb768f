//! Benchmark values frozen from the independent oracle in
//! `oracle/benchmark_fixtures.py` (MF2 for the bi-fidelity families, a numpy
//! transcription for the tri-fidelity ones).

use mfsurrogate::FidelityLevel;

pub const FIXTURES: &[(&str, usize, FidelityLevel, &[f64], f64)] = &[
    ("forrester2f", 1, FidelityLevel::Hf, &[0.3333333333333333], 0.0),
    ("forrester2f", 1, FidelityLevel::Lf, &[0.3333333333333333], -6.666666666666667),
    ("forrester2f", 1, FidelityLevel::Hf, &[0.0], 3.027209981231713),
    ("forrester2f", 1, FidelityLevel::Lf, &[0.0], -8.486395009384143),
    ("forrester2f", 1, FidelityLevel::Hf, &[0.75], -5.9932767166446155),
    ("forrester2f", 1, FidelityLevel::Lf, &[0.75], -5.496638358322308),
    ("forrester2f", 1, FidelityLevel::Hf, &[0.1], -0.6565767743055739),
    ("forrester2f", 1, FidelityLevel::Lf, &[0.1], -9.328288387152787),
    ("booth2f", 2, FidelityLevel::Hf, &[1.0, 3.0], 0.0),
    ("booth2f", 2, FidelityLevel::Lf, &[1.0, 3.0], 11.9),
    ("booth2f", 2, FidelityLevel::Hf, &[-10.0, 10.0], 234.0),
    ("booth2f", 2, FidelityLevel::Lf, &[-10.0, 10.0], -50.0),
    ("booth2f", 2, FidelityLevel::Hf, &[2.5, -4.0], 172.25),
    ("booth2f", 2, FidelityLevel::Lf, &[2.5, -4.0], 217.5),
    ("branin2f", 2, FidelityLevel::Hf, &[0.0, 0.0], 55.602112642270264),
    ("branin2f", 2, FidelityLevel::Lf, &[0.0, 0.0], 21.80211264227026),
    ("branin2f", 2, FidelityLevel::Hf, &[-5.0, 15.0], -319.99170048422184),
    ("branin2f", 2, FidelityLevel::Lf, &[-5.0, 15.0], 57.9960922076736),
    ("branin2f", 2, FidelityLevel::Hf, &[3.0, 2.5], -55.74347822006553),
    ("branin2f", 2, FidelityLevel::Lf, &[3.0, 2.5], 222.16026898570044),
    ("branin2f", 2, FidelityLevel::Hf, &[9.5, 7.25], -140.508156497356),
    ("branin2f", 2, FidelityLevel::Lf, &[9.5, 7.25], 2033.5462833839479),
    ("park91a2f", 4, FidelityLevel::Hf, &[0.5, 0.5, 0.5, 0.5], 8.926130363363933),
    ("park91a2f", 4, FidelityLevel::Lf, &[0.5, 0.5, 0.5, 0.5], 9.354071849074643),
    ("park91a2f", 4, FidelityLevel::Hf, &[1.0, 0.0, 1.0, 0.25], 11.094179574609619),
    ("park91a2f", 4, FidelityLevel::Lf, &[1.0, 0.0, 1.0, 0.25], 11.52772259583786),
    ("park91a2f", 4, FidelityLevel::Hf, &[0.1, 0.9, 0.3, 0.7], 8.405596105777754),
    ("park91a2f", 4, FidelityLevel::Lf, &[0.1, 0.9, 0.3, 0.7], 9.68951204359706),
    ("hartmann6_2f", 6, FidelityLevel::Hf, &[0.2017, 0.15, 0.4769, 0.2753, 0.3117, 0.6573], -3.042457660069204),
    ("hartmann6_2f", 6, FidelityLevel::Lf, &[0.2017, 0.15, 0.4769, 0.2753, 0.3117, 0.6573], -1.9052239209000263),
    ("hartmann6_2f", 6, FidelityLevel::Hf, &[0.5, 0.5, 0.5, 0.5, 0.5, 0.5], -1.5903685524238318),
    ("hartmann6_2f", 6, FidelityLevel::Lf, &[0.5, 0.5, 0.5, 0.5, 0.5, 0.5], -1.484308301847176),
    ("hartmann6_2f", 6, FidelityLevel::Hf, &[0.1, 0.9, 0.3, 0.7, 0.0, 1.0], -1.3339153885350583),
    ("hartmann6_2f", 6, FidelityLevel::Lf, &[0.1, 0.9, 0.3, 0.7, 0.0, 1.0], -1.3315881162507957),
    ("borehole2f", 8, FidelityLevel::Hf, &[0.1, 25050.0, 89335.0, 1050.0, 89.55, 760.0, 1400.0, 10950.0], 70.87291263681897),
    ("borehole2f", 8, FidelityLevel::Lf, &[0.1, 25050.0, 89335.0, 1050.0, 89.55, 760.0, 1400.0, 10950.0], 56.398719259575394),
    ("borehole2f", 8, FidelityLevel::Hf, &[0.05, 100.0, 63070.0, 990.0, 63.1, 700.0, 1120.0, 9855.0], 20.01478331243087),
    ("borehole2f", 8, FidelityLevel::Lf, &[0.05, 100.0, 63070.0, 990.0, 63.1, 700.0, 1120.0, 9855.0], 15.92724795335779),
    ("borehole2f", 8, FidelityLevel::Hf, &[0.15, 50000.0, 115600.0, 1110.0, 116.0, 820.0, 1680.0, 12045.0], 145.68027003845495),
    ("borehole2f", 8, FidelityLevel::Lf, &[0.15, 50000.0, 115600.0, 1110.0, 116.0, 820.0, 1680.0, 12045.0], 115.92816563160555),
    ("forrester3f", 1, FidelityLevel::Hf, &[0.5], 0.05683108917660511),
    ("forrester3f", 1, FidelityLevel::Mf, &[0.5], -1.3180269298807388),
    ("forrester3f", 1, FidelityLevel::Lf, &[0.5], -4.5453512865871595),
    ("forrester3f", 1, FidelityLevel::Hf, &[0.0], 4.730015595674551),
    ("forrester3f", 1, FidelityLevel::Mf, &[0.0], -2.2295925140762156),
    ("forrester3f", 1, FidelityLevel::Lf, &[0.0], -8.486395009384143),
    ("forrester3f", 1, FidelityLevel::Hf, &[0.9], 2.9659153902095006),
    ("forrester3f", 1, FidelityLevel::Mf, &[0.9], 4.28396275437174),
    ("forrester3f", 1, FidelityLevel::Lf, &[0.9], 1.8559751695811606),
    ("rosenbrock3f", 2, FidelityLevel::Hf, &[1.0, 1.0], 0.0),
    ("rosenbrock3f", 2, FidelityLevel::Mf, &[1.0, 1.0], 8.0),
    ("rosenbrock3f", 2, FidelityLevel::Lf, &[1.0, 1.0], -0.47619047619047616),
    ("rosenbrock3f", 2, FidelityLevel::Hf, &[-2.0, 2.0], 409.0),
    ("rosenbrock3f", 2, FidelityLevel::Mf, &[-2.0, 2.0], 200.0),
    ("rosenbrock3f", 2, FidelityLevel::Lf, &[-2.0, 2.0], 40.5),
    ("rosenbrock3f", 2, FidelityLevel::Hf, &[0.5, -1.5], 306.5),
    ("rosenbrock3f", 2, FidelityLevel::Mf, &[0.5, -1.5], 159.875),
    ("rosenbrock3f", 2, FidelityLevel::Lf, &[0.5, -1.5], 31.076923076923077),
    ("rosenbrock3f", 5, FidelityLevel::Hf, &[1.0, 1.0, 1.0, 1.0, 1.0], 0.0),
    ("rosenbrock3f", 5, FidelityLevel::Mf, &[1.0, 1.0, 1.0, 1.0, 1.0], 33.5),
    ("rosenbrock3f", 5, FidelityLevel::Lf, &[1.0, 1.0, 1.0, 1.0, 1.0], -0.5777777777777777),
    ("rosenbrock3f", 5, FidelityLevel::Hf, &[0.3, -0.7, 1.2, -1.9, 0.05], 2507.57),
    ("rosenbrock3f", 5, FidelityLevel::Mf, &[0.3, -0.7, 1.2, -1.9, 0.05], 1265.625),
    ("rosenbrock3f", 5, FidelityLevel::Lf, &[0.3, -0.7, 1.2, -1.9, 0.05], 257.1599486521181),
    ("rastrigin3f", 2, FidelityLevel::Hf, &[0.1, 0.1], 0.0),
    ("rastrigin3f", 2, FidelityLevel::Mf, &[0.1, 0.1], 0.5000000000000002),
    ("rastrigin3f", 2, FidelityLevel::Lf, &[0.1, 0.1], 0.21966991411009),
    ("rastrigin3f", 2, FidelityLevel::Hf, &[-0.1, 0.2], 1.428868532636087),
    ("rastrigin3f", 2, FidelityLevel::Mf, &[-0.1, 0.2], 1.8068778260468323),
    ("rastrigin3f", 2, FidelityLevel::Lf, &[-0.1, 0.2], 2.3352797877997746),
    ("rastrigin3f", 2, FidelityLevel::Hf, &[0.05, 0.15], 1.9454116994445054),
    ("rastrigin3f", 2, FidelityLevel::Mf, &[0.05, 0.15], 2.4502176505393343),
    ("rastrigin3f", 2, FidelityLevel::Lf, &[0.05, 0.15], 2.8529224292833333),
    ("rastrigin3f", 5, FidelityLevel::Hf, &[0.1, 0.1, 0.1, 0.1, 0.1], 0.0),
    ("rastrigin3f", 5, FidelityLevel::Mf, &[0.1, 0.1, 0.1, 0.1, 0.1], 1.2500000000000004),
    ("rastrigin3f", 5, FidelityLevel::Lf, &[0.1, 0.1, 0.1, 0.1, 0.1], 0.549174785275225),
    ("rastrigin3f", 5, FidelityLevel::Hf, &[-0.05, 0.0, 0.12, 0.2, -0.1], 5.3711320042278725),
    ("rastrigin3f", 5, FidelityLevel::Mf, &[-0.05, 0.0, 0.12, 0.2, -0.1], 6.468819132018837),
    ("rastrigin3f", 5, FidelityLevel::Lf, &[-0.05, 0.0, 0.12, 0.2, -0.1], 6.833062696313355),
];

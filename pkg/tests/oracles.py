"""Reference values frozen from the mpmath recipes in ``_oracle_recipes.py``."""

FROZEN = {
    'lngamma_half': 0.5723649429247001,
    'lngamma_5': 3.1780538303479458,
    'zeta_2': 1.6449340668482264,
    'euler_gamma': 0.5772156649015329,
    'gamma1_z2_tau2': 0.5641895835477563,
    'beta_1.3_1.7': 0.40773831813234795,
    'dyson_n2_tau4': 1.1803405990160962,
    'dyson_q0.7_tau2.5': 0.9591205323027027,
    'dyson_q-3.3_tau5': 1.4892735530024006,
    'dyson_q1.4_tau1.5': 3.645603876265111,
    'selberg_n3_tau5.5_l0.3_0.7': 0.6130919589392284,
    'selberg_n2_tau5': 2.0833333333333335,
    'interval_negmoment_q-1_tau3': 3.3962800821789583,
    'circle_q-1_tau2': 1.5707963267948966,
    'logG_tau1_z0.5': -0.5054330544896953,
    'logG_tau1_z1.7': 0.046277349456604056,
    'logG_tau1_z3.2': 0.06778223238642868,
    'logG_z0.7_tau1.5': -0.34820980500999316,
    'logG_z2.3_tau2': 0.6049547160878365,
    'logG_z1.1_tau5': 0.2051797322507767,
    'logG_z3.4_tau0.6': 1.8913803330437013,
    'critical_circle_q0.5_l0.2_0.2': 1.8061046641897809,
    'critical_interval_q0.5_l0.2_0.5': 0.8255076633286447,
    'critical_interval_q-0.7_l0_0': 6.144648032823448,
    'complex_selberg_n1_tau2_l-0.8': 32.79559521933772,
    'ipr_ratio_n2_betasq0.1_N1024': 0.003543193041668819,
    'beta22_tau2_k1': 0.6366197723675814,
    'beta22_tau2_k2': 0.5,
    'beta22_tau2_k3': 0.4244131815783876,
    'beta23_tau1.7_k2': 0.895680640601707,
    'frechet_tau2_b2_q1': 1.2533141373155003,
    'beta02_atom': 0.8627450980392157,
    'hurwitz_3.5_2.2': 0.09518186354249689,
    'hurwitz_1.5_10': 0.6486616319415704,
    'hurwitz_2_0.3': 12.245364546107732,
    'neg_digamma_0.3': 3.502524222200133,
    'neg_digamma_4.5': -1.388870926359529,
    'bernpoly_10_1.7': 0.38009021065757553,
    'bernpoly_20_-0.4': 428.0699404640117,
    'malmsten_s1.5': 0.2846828704729192,
    'wallis': 1.5707963267948966,
}

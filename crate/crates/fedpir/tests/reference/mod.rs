//! Plotted data points of the published cost and rate figures, as (rho, value).

#![allow(dead_code)]

pub const FIG3_STAR: &[(usize, f64)] = &[(10, 123.75)];
pub const FIG3_GXSTPIR: &[(usize, f64)] = &[(3, 70.0), (4, 125.0), (5, 203.333333333333), (6, 302.5), (7, 422.0), (8, 561.666666666667), (9, 721.428571428572), (10, 901.25)];
pub const FIG3_OURS: &[(usize, f64)] = &[(3, 70.0), (4, 86.6666666666667), (5, 105.0), (6, 124.0), (7, 143.333333333333), (8, 162.857142857143), (9, 182.5), (10, 202.222222222222)];
pub const FIG5_STAR: &[(usize, f64)] = &[(100, 2305.55555555556)];
pub const FIG5_GXSTPIR: &[(usize, f64)] = &[(11, 2300.0), (12, 2690.0), (13, 3153.33333333333), (14, 3665.0), (15, 4220.0), (16, 4816.66666666667), (17, 5454.28571428571), (18, 6132.5), (19, 6851.11111111111), (20, 7610.0), (21, 8409.09090909091), (22, 9248.33333333333), (23, 10127.6923076923), (24, 11047.1428571429), (25, 12006.6666666667), (26, 13006.25), (27, 14045.8823529412), (28, 15125.5555555556), (29, 16245.2631578947), (30, 17405.0), (31, 18604.7619047619), (32, 19844.5454545455), (33, 21124.347826087), (34, 22444.1666666667), (35, 23804.0), (36, 25203.8461538462), (37, 26643.7037037037), (38, 28123.5714285714), (39, 29643.4482758621), (40, 31203.3333333333), (41, 32803.2258064516), (42, 34443.125), (43, 36123.0303030303), (44, 37842.9411764706), (45, 39602.8571428571), (46, 41402.7777777778), (47, 43242.7027027027), (48, 45122.6315789474), (49, 47042.5641025641), (50, 49002.5), (51, 51002.4390243902), (52, 53042.380952381), (53, 55122.3255813954), (54, 57242.2727272727), (55, 59402.2222222222), (56, 61602.1739130435), (57, 63842.1276595745), (58, 66122.0833333333), (59, 68442.0408163265), (60, 70802.0), (61, 73201.9607843137), (62, 75641.9230769231), (63, 78121.8867924528), (64, 80641.8518518519), (65, 83201.8181818182), (66, 85801.7857142857), (67, 88441.7543859649), (68, 91121.724137931), (69, 93841.6949152542), (70, 96601.6666666667), (71, 99401.6393442623), (72, 102241.612903226), (73, 105121.587301587), (74, 108041.5625), (75, 111001.538461538), (76, 114001.515151515), (77, 117041.492537313), (78, 120121.470588235), (79, 123241.449275362), (80, 126401.428571429), (81, 129601.408450704), (82, 132841.388888889), (83, 136121.369863014), (84, 139441.351351351), (85, 142801.333333333), (86, 146201.315789474), (87, 149641.298701299), (88, 153121.282051282), (89, 156641.265822785), (90, 160201.25), (91, 163801.234567901), (92, 167441.219512195), (93, 171121.204819277), (94, 174841.190476191), (95, 178601.176470588), (96, 182401.162790698), (97, 186241.149425287), (98, 190121.136363636), (99, 194041.123595506), (100, 198001.111111111)];
pub const FIG5_OURS: &[(usize, f64)] = &[(11, 2300.0), (12, 1826.66666666667), (13, 1610.0), (14, 1496.0), (15, 1433.33333333333), (16, 1400.0), (17, 1385.0), (18, 1382.22222222222), (19, 1388.0), (20, 1400.0), (21, 1416.66666666667), (22, 1436.92307692308), (23, 1460.0), (24, 1485.33333333333), (25, 1512.5), (26, 1541.17647058824), (27, 1571.11111111111), (28, 1602.10526315789), (29, 1634.0), (30, 1666.66666666667), (31, 1700.0), (32, 1733.91304347826), (33, 1768.33333333333), (34, 1803.2), (35, 1838.46153846154), (36, 1874.07407407407), (37, 1910.0), (38, 1946.20689655172), (39, 1982.66666666667), (40, 2019.35483870968), (41, 2056.25), (42, 2093.33333333333), (43, 2130.58823529412), (44, 2168.0), (45, 2205.55555555556), (46, 2243.24324324324), (47, 2281.05263157895), (48, 2318.97435897436), (49, 2357.0), (50, 2395.12195121951), (51, 2433.33333333333), (52, 2471.62790697674), (53, 2510.0), (54, 2548.44444444444), (55, 2586.95652173913), (56, 2625.53191489362), (57, 2664.16666666667), (58, 2702.85714285714), (59, 2741.6), (60, 2780.39215686275), (61, 2819.23076923077), (62, 2858.11320754717), (63, 2897.03703703704), (64, 2936.0), (65, 2975.0), (66, 3014.0350877193), (67, 3053.10344827586), (68, 3092.20338983051), (69, 3131.33333333333), (70, 3170.49180327869), (71, 3209.67741935484), (72, 3248.88888888889), (73, 3288.125), (74, 3327.38461538461), (75, 3366.66666666667), (76, 3405.97014925373), (77, 3445.29411764706), (78, 3484.63768115942), (79, 3524.0), (80, 3563.38028169014), (81, 3602.77777777778), (82, 3642.19178082192), (83, 3681.62162162162), (84, 3721.06666666667), (85, 3760.52631578947), (86, 3800.0), (87, 3839.48717948718), (88, 3878.98734177215), (89, 3918.5), (90, 3958.02469135802), (91, 3997.56097560976), (92, 4037.10843373494), (93, 4076.66666666667), (94, 4116.23529411765), (95, 4155.81395348837), (96, 4195.40229885057), (97, 4235.0), (98, 4274.60674157303), (99, 4314.22222222222), (100, 4353.84615384615)];
pub const FIG4_OURS: &[(usize, f64)] = &[(3, 0.0166666666666667), (4, 0.0125), (5, 0.01), (6, 0.00833333333333333), (7, 0.00714285714285714), (8, 0.00625), (9, 0.00555555555555555), (10, 0.005)];
pub const FIG4_GXSTPIR: &[(usize, f64)] = &[(3, 0.0166666666666667), (4, 0.00833333333333333), (5, 0.005), (6, 0.00333333333333333), (7, 0.00238095238095238), (8, 0.00178571428571429), (9, 0.00138888888888889), (10, 0.00111111111111111)];
pub const FIG4_STAR: &[(usize, f64)] = &[(10, 0.00888888888888889)];
pub const FIG6_OURS: &[(usize, f64)] = &[(3, 0.1), (4, 0.15), (5, 0.2), (6, 0.25), (7, 0.3), (8, 0.35), (9, 0.4), (10, 0.45)];
pub const FIG6_GXSTPIR: &[(usize, f64)] = &[(3, 0.1), (4, 0.2), (5, 0.3), (6, 0.4), (7, 0.5), (8, 0.6), (9, 0.7), (10, 0.8)];
pub const FIG6_STAR: &[(usize, f64)] = &[(10, 0.0888888888888889)];

// (rademacher, mixing, truncation, delta_prime, vacuous, total) per grid index
const EXPECTED: [(f64, f64, f64, f64, bool, f64); 50] = [
    (0.848528137423857, 1.4129971285969718, 1.991325640777315, 0.05, false, 4.252850906798144), // 0
    (0.9004921731176535, 1.500407385280703, 0.03633654533871595, 0.049744000000000003, false, 2.4372361037370727), // 1
    (0.965981366279909, 1.61091721500103, 0.0012766367271957663, 0.049368, false, 2.578175218008135), // 2
    (1.0403420490143462, 1.7369167072206875, 3.223242642666651e-05, 0.048872000000000006, false, 2.7772909886614605), // 3
    (1.1212720049528164, 1.8747278512431436, 2.212540373570656, 0.048256, false, 5.208540229766616), // 4
    (1.2074767078498865, 2.010730164139922, 0.07688576794569517, 0.05, false, 3.295092639935503), // 5
    (1.2981569352630016, 2.1786991254298447, 0.002152818885466005, 0.046664000000000004, false, 3.4790088795783123), // 6
    (f64::INFINITY, f64::INFINITY, 0.00020334506236248905, -0.011600000000000001, true, f64::INFINITY), // 7
    (1.490979938319288, 2.486682435116033, 4.76722509474079, 0.049324, false, 8.744887468176112), // 8
    (1.5924748714551875, 2.660868243827389, 0.11154644017680847, 0.048528, false, 4.364889555459385), // 9
    (1.697056274847714, 2.8259942571939436, 0.01066332906615323, 0.05, false, 4.5337138611078105), // 10
    (1.804557022238873, 3.0292334155794167, 0.0011931345913077536, 0.046576000000000006, false, 4.834983572409597), // 11
    (1.9148408947413658, 3.223420562172029, 5.24058831983012, 0.04542, false, 10.378849776743515), // 12
    (2.027794217309809, 3.424408414708897, 0.40684278818307523, 0.044144, false, 5.859045420201781), // 13
    (2.143320213701523, 3.5691277331340867, 0.045086735423262886, 0.05, false, 5.757534682258872), // 14
    (2.2613350843332274, 3.7656500003161875, 0.0031499529972317934, 0.05, false, 6.030135037646646), // 15
    (2.3817652103516376, 3.987561960537745, 14.070634713064713, 0.047688, false, 20.439961883954094), // 16
    (2.50454511428886, 4.206549004283273, 1.2503163115064064, 0.046352000000000004, false, 7.96141043007854), // 17
    (f64::INFINITY, f64::INFINITY, 0.08558398910262396, -0.0776, true, f64::INFINITY), // 18
    (2.7569243083173407, 4.665439300521088, 0.019034650569243708, 0.043320000000000004, false, 7.441398259407673), // 19
    (2.886421412654183, 4.8065644356633515, 31.997438397808065, 0.05, false, 39.6904242461256), // 20
    (3.0180623376551723, 5.0257772594089145, 1.7413880615584578, 0.05, false, 9.785227658622544), // 21
    (3.1518054976055936, 5.266897089982154, 0.3765874524656373, 0.048484000000000006, false, 8.795290040053386), // 22
    (3.287612191857585, 5.515165791482322, 0.09291022605762193, 0.046848, false, 8.89568820939753), // 23
    (3.4254462411807776, 5.771020238939548, 33.387991248093954, 0.045092, false, 42.58445772821428), // 24
    (3.5652736880340945, 5.937011704937802, 5.7023564915263565, 0.05, false, 15.204641884498255), // 25
    (3.707062546986863, 6.307670098346176, 1.3595442198092011, 0.04122000000000001, false, 11.37427686514224), // 26
    (3.850782594928802, 6.589841711620344, 0.20006294948607103, 0.039104, false, 10.640687256035218), // 27
    (3.996405193181131, 6.654946151602063, 83.04334638990125, 0.05, false, 93.69469773468444), // 28
    (f64::INFINITY, f64::INFINITY, 15.54694154033717, -0.1436, true, f64::INFINITY), // 29
    (4.2932505167995965, 7.149262805830833, 2.1990903206731467, 0.05, false, 13.641603643303576), // 30
    (4.444422620226891, 7.511359037759366, 0.9921334248091773, 0.043832, false, 12.947915082795435), // 31
    (4.597395817404326, 7.816065347288401, 174.28085652808178, 0.041536000000000003, false, 186.6943176927745), // 32
    (4.752147481725857, 8.131987405359629, 19.259248743086697, 0.03912, false, 32.14338363017219), // 33
    (4.908655911463225, 8.460420493113375, 8.31234226624551, 0.036584000000000005, false, 21.68141867082211), // 34
    (5.066900261586917, 8.437569957604406, 4.025541229779463, 0.05, false, 17.530011448970786), // 35
    (5.22686048297394, 8.751744980621435, 168.27837082138063, 0.047644000000000006, false, 182.256976284976), // 36
    (5.3885172679604025, 9.076599584023107, 56.48181779321402, 0.045168, false, 70.94693464519753), // 37
    (5.5518520013740735, 9.41325321331142, 26.054971341041846, 0.042572000000000006, false, 41.02007655572734), // 38
    (5.7168467163247225, 9.763081278175376, 7.307554739626879, 0.039856, false, 22.78748273412698), // 39
    (f64::INFINITY, f64::INFINITY, 389.1328588619854, -0.2096, true, f64::INFINITY), // 40
    (6.051747227972944, 10.50960999072765, 139.01282310018257, 0.034064000000000004, false, 155.57418031888315), // 41
    (6.221619989529869, 10.360447453300985, 36.99123444644955, 0.05, false, 53.57330188928041), // 42
    (6.3930865987402985, 10.715141114748606, 30.967451262633542, 0.047224, false, 48.07567897612245), // 43
    (6.566131795856933, 11.083342521579263, 763.2344632252781, 0.044328000000000006, false, 780.8839375427143), // 44
    (6.740740775826983, 11.224904562124491, 156.67610366626354, 0.05, false, 174.641749004215), // 45
    (6.9168991646585445, 11.86756105258812, 123.99020650359336, 0.038176, false, 142.77466672084003), // 46
    (7.09459299758094, 12.288518453961238, 108.72077346293828, 0.03492000000000001, false, 128.10388491448046), // 47
    (7.273808698818867, 12.73332045035936, 692.2473041605938, 0.031544, false, 712.254433309772), // 48
    (7.454533062822472, 12.413535094756414, 421.1142090762871, 0.05, false, 440.982277233866), // 49
];

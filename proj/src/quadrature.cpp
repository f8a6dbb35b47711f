#include "thermocq/quadrature.hpp"

#include <Eigen/Dense>
#include <map>
#include <mutex>
#include <stdexcept>

namespace thermocq {

namespace {

// Golub-Welsch: nodes/weights of the Gauss rule from the three-term
// recurrence x p_n = p_{n+1} + a_n p_n + b_n p_{n-1} and mu0 = int w(x) dx
Rule1D gauss_from_recurrence(const std::vector<double>& a,
                             const std::vector<double>& b, double mu0) {
    int n = static_cast<int>(a.size());
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        J(i, i) = a[static_cast<size_t>(i)];
        if (i + 1 < n) {
            double s = std::sqrt(b[static_cast<size_t>(i + 1)]);
            J(i, i + 1) = J(i + 1, i) = s;
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    Rule1D r;
    r.nodes.resize(static_cast<size_t>(n));
    r.weights.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        r.nodes[static_cast<size_t>(i)] = es.eigenvalues()(i);
        double v0 = es.eigenvectors()(0, i);
        r.weights[static_cast<size_t>(i)] = mu0 * v0 * v0;
    }
    return r;
}

// weight -ln(x) on (0,1), n = 1..16, generated offline by Golub-Welsch on
// the exact moments 1/(k+1)^2 in 120-digit arithmetic
constexpr int kLogGaussMax = 16;
const double kLogGauss[][2] = {
    {0.2500000000000000000, 1.000000000000000000},
    {0.1120088061669761830, 0.7185393190303844407},
    {0.6022769081187381028, 0.2814606809696155593},
    {0.06389079308732540500, 0.5134045522323633251},
    {0.3689970637156187655, 0.3919800412014875548},
    {0.7668803039389414554, 0.09461540656614912006},
    {0.04144848019938322080, 0.3834640681451351249},
    {0.2452749143206022519, 0.3868753177747626273},
    {0.5561654535602758372, 0.1904351269501424154},
    {0.8489823945329851746, 0.03922548712995983245},
    {0.02913447215197205330, 0.2978934717828944573},
    {0.1739772133208976287, 0.3497762265132241804},
    {0.4117025202849020432, 0.2344882900440524189},
    {0.6773141745828203807, 0.09893045951663314698},
    {0.8947713610310082836, 0.01891155214319579649},
    {0.02163400584411694900, 0.2387636625785475697},
    {0.1295833911549507961, 0.3082865732739467930},
    {0.3140204499147655088, 0.2453174265632103860},
    {0.5386572173518021445, 0.1420087565664766854},
    {0.7569153373774028522, 0.05545462232488629002},
    {0.9226688513721202373, 0.01016895869293227589},
    {0.01671935540825851594, 0.1961693894252482075},
    {0.1001856779156751216, 0.2703026442472729821},
    {0.2462942462079305990, 0.2396818730076909483},
    {0.4334634932570331058, 0.1657757748104329066},
    {0.6323509880477660885, 0.08894322713765796444},
    {0.8111186267401055765, 0.03319430435657106703},
    {0.9408481667433477218, 0.005932787015125923999},
    {0.01332024416089246501, 0.1644166047280028868},
    {0.07975042901389493841, 0.2375256100233060205},
    {0.1978710293261880538, 0.2268419844319191264},
    {0.3541539943519094197, 0.1757540790060702450},
    {0.5294585752349172777, 0.1129240302467590519},
    {0.7018145299390999638, 0.05787221071778207240},
    {0.8493793204411066760, 0.02097907374213297804},
    {0.9533264500563597888, 0.003686407104027619013},
    {0.01086933608417547711, 0.1400684387481347343},
    {0.06498366633800793941, 0.2097722052010304475},
    {0.1622293980238829387, 0.2114271498966027285},
    {0.2937499039716746581, 0.1771562339380799895},
    {0.4466318819054680372, 0.1277992280332054959},
    {0.6054816627761286208, 0.07847890261156217255},
    {0.7541101371571635667, 0.03902250498539909685},
    {0.8772658288358382532, 0.01386729554959302329},
    {0.9622505594102818414, 0.002408041036392311573},
    {0.009042630962199650637, 0.1209551319545705150},
    {0.05397126622250062950, 0.1863635425640718703},
    {0.1353118246392507749, 0.1956608732777599827},
    {0.2470524162871598242, 0.1735771421829069208},
    {0.3802125396093323340, 0.1356956729954842017},
    {0.5237923179718432012, 0.09364675853811052599},
    {0.6657752055164245972, 0.05578772735141587408},
    {0.7941904160119662174, 0.02715981089923333115},
    {0.8981610912190035382, 0.009515182602848514999},
    {0.9688479887186335394, 0.001638157633598263255},
    {0.007643941174637706629, 0.1056522560991004913},
    {0.04554182825657891855, 0.1665716806006290486},
    {0.1145222974551245837, 0.1805632182877537248},
    {0.2103785812270335309, 0.1672787367737841793},
    {0.3266955532216928480, 0.1386970574016312205},
    {0.4554532469288134383, 0.1038334333650440603},
    {0.5876483563590844079, 0.06953669788873523235},
    {0.7139638500125614405, 0.04054160080359632957},
    {0.8254532178018118042, 0.01943540247621817278},
    {0.9141939216125431379, 0.006737429342450062702},
    {0.9738602562755861523, 0.001152486961057477783},
    {0.006548722279080058789, 0.09319269144393132449},
    {0.03894680956044995916, 0.1497518275763223642},
    {0.09815026310600662886, 0.1665574543645930053},
    {0.1811385815906315774, 0.1596335594369876512},
    {0.2832200676673725547, 0.1384248318648356211},
    {0.3984344351634366437, 0.1100165706357211623},
    {0.5199526267923526627, 0.07996182177082897026},
    {0.6405109167161064543, 0.05240695482464177065},
    {0.7528650120518305784, 0.03007108887376118712},
    {0.8502400241623022007, 0.01424924558799827911},
    {0.9267496832239141010, 0.004899924582321760939},
    {0.9777561296899974792, 0.0008340290380569033647},
    {0.005674766256242669030, 0.08290049679327578782},
    {0.03369010879903253675, 0.1353686731657445004},
    {0.08503675447417502809, 0.1537732843922922009},
    {0.1574975594778890287, 0.1514581585099881906},
    {0.2475695788768431461, 0.1360403365372830607},
    {0.3507443123608552004, 0.1131768228816338034},
    {0.4617737467616102462, 0.08737443048004525824},
    {0.5749594665255613207, 0.06216023064180486952},
    {0.6844598803504300425, 0.04008772893416585190},
    {0.7846025688103470805, 0.02272384493997219533},
    {0.8701864284078883888, 0.01067123041296844409},
    {0.9367578293067513934, 0.003646492275974140080},
    {0.9808434518115909485, 0.0006182700348516970769},
    {0.004966003573868542244, 0.07429122506751041250},
    {0.02943254011888517829, 0.1229887724693229143},
    {0.07437629222453576261, 0.1421993065625233557},
    {0.1381384919891862818, 0.1432292976412642220},
    {0.2180556484989590781, 0.1323450837720852093},
    {0.3106620839181019832, 0.1141358757366764753},
    {0.4118724751777502072, 0.09228303807907361322},
    {0.5171793073986543297, 0.06975367329393756455},
    {0.6218648597285111197, 0.04883032360051356464},
    {0.7212207452081088537, 0.03110179606441614112},
    {0.8107659880715898564, 0.01746281195019609383},
    {0.8864540380344346572, 0.008142423429875936133},
    {0.9448591394618186389, 0.002768436418563937332},
    {0.9833310264856784800, 0.0004679359140405601353},
    {0.004383110175475403835, 0.06700997891649371360},
    {0.02593589810533061610, 0.1122641502867057418},
    {0.06559609541231624525, 0.1317601770396799037},
    {0.1221019340733316033, 0.1352176490619347251},
    {0.1933952623740071160, 0.1278817986456803704},
    {0.2767728387061020244, 0.1135329074902194213},
    {0.3690151271397429438, 0.09520523978435865851},
    {0.4665243289647065827, 0.07538931416739595434},
    {0.5654734737918173064, 0.05607842449265371799},
    {0.6619629190124564214, 0.03876829537501823111},
    {0.7521788833787857988, 0.02445148326875007596},
    {0.8325480338661895893, 0.01362463013823884691},
    {0.8998820501208980843, 0.006316447598590761200},
    {0.9515061887434099027, 0.002138889915944471348},
    {0.9853644681221319389, 0.0003606138183354066469},
    {0.003897834487115915924, 0.06079171004359123285},
    {0.02302894561687323982, 0.1029156775175821444},
    {0.05828039830624041235, 0.1223556620460091936},
    {0.1086783650910540365, 0.1275692469370159887},
    {0.1726094549098439378, 0.1230135746000709154},
    {0.2479370544705784951, 0.1118472448554857226},
    {0.3320945491299171560, 0.09659638515212434125},
    {0.4221839105819486001, 0.07935666435147313878},
    {0.5150824733814626035, 0.06185049458196520710},
    {0.6075561204477287241, 0.04543524650772666863},
    {0.6963756532282140612, 0.03109897475158180641},
    {0.7784325658732654052, 0.01945976592736084208},
    {0.8508502697153910832, 0.01077625496320552565},
    {0.9110868572222719054, 0.004972542890087641713},
    {0.9570255717035421576, 0.001678201110051194515},
    {0.9870478002479844768, 0.0002823537646684363218},
};

} // namespace

Rule1D gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
    static std::map<int, Rule1D> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    // Legendre on [-1,1]: a_n = 0, b_n = n^2/(4n^2-1), mu0 = 2
    std::vector<double> a(static_cast<size_t>(n), 0.0), b(static_cast<size_t>(n), 0.0);
    for (int k = 1; k < n; ++k)
        b[static_cast<size_t>(k)] = k * k / (4.0 * k * k - 1.0);
    Rule1D r = gauss_from_recurrence(a, b, 2.0);
    for (auto& x : r.nodes) x = 0.5 * (x + 1.0);
    for (auto& w : r.weights) w *= 0.5;
    cache[n] = r;
    return r;
}

Rule1D gauss_log(int n) {
    if (n < 1 || n > kLogGaussMax)
        throw std::invalid_argument("gauss_log: n out of table range");
    Rule1D r;
    int off = n * (n - 1) / 2;
    for (int i = 0; i < n; ++i) {
        r.nodes.push_back(kLogGauss[off + i][0]);
        r.weights.push_back(kLogGauss[off + i][1]);
    }
    return r;
}

namespace {

// Gauss-Jacobi for weight (1-x) on [-1,1] (alpha = 1, beta = 0), mapped to
// [0,1]:  int_0^1 f(u)(1-u) du ~ sum w_i f(u_i)
Rule1D gauss_jacobi10(int n) {
    std::vector<double> a(static_cast<size_t>(n)), b(static_cast<size_t>(n), 0.0);
    for (int k = 0; k < n; ++k)
        a[static_cast<size_t>(k)] = -1.0 / ((2.0 * k + 1.0) * (2.0 * k + 3.0));
    for (int k = 1; k < n; ++k)
        b[static_cast<size_t>(k)] = k * (k + 1.0) / ((2.0 * k + 1.0) * (2.0 * k + 1.0));
    Rule1D r = gauss_from_recurrence(a, b, 2.0);
    for (auto& x : r.nodes) x = 0.5 * (x + 1.0);
    for (auto& w : r.weights) w *= 0.25; // jacobian of the map times weight scaling
    return r;
}

} // namespace

TriangleRule triangle_rule(int order) {
    if (order < 1) order = 1;
    static std::map<int, TriangleRule> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(order);
    if (it != cache.end()) return it->second;

    // conical product: x = u, y = v(1-u);  dA = (1-u) du dv
    int n = (order + 2) / 2;
    Rule1D ru = gauss_jacobi10(n);
    Rule1D rv = gauss_legendre(n);
    TriangleRule t;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double u = ru.nodes[static_cast<size_t>(i)];
            double v = rv.nodes[static_cast<size_t>(j)];
            t.points.push_back({u, v * (1.0 - u)});
            t.weights.push_back(ru.weights[static_cast<size_t>(i)] *
                                rv.weights[static_cast<size_t>(j)]);
        }
    cache[order] = t;
    return t;
}

} // namespace thermocq

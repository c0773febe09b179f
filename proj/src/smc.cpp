#include "causalnet/smc.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace causalnet {

std::string_view to_string(Instance i) noexcept {
    switch (i) {
        case Instance::MatQ: return "matq";
        case Instance::PermCat: return "perm";
        case Instance::FreeSmc: return "free";
    }
    return "?";
}

Instance parse_instance(std::string_view text) {
    if (text == "matq") return Instance::MatQ;
    if (text == "perm") return Instance::PermCat;
    if (text == "free") return Instance::FreeSmc;
    throw Error(ErrorCode::ParseError, "unknown instance '" + std::string(text) + "' (expected matq, perm or free)");
}

// ---------------------------------------------------------------------------
// Objects

Object Object::dimension(std::uint64_t dim) {
    if (dim == 0) throw Error(ErrorCode::ValidationError, "MatQ objects have dimension >= 1");
    return Object(Instance::MatQ, dim, {});
}

Object Object::word(Instance instance, Word w) {
    if (instance == Instance::MatQ) throw Error(ErrorCode::InstanceMismatch, "MatQ objects are dimensions, not words");
    return Object(instance, 1, std::move(w));
}

Object Object::unit(Instance instance) {
    return Object(instance, 1, {});
}

std::uint64_t Object::dim() const {
    if (instance_ != Instance::MatQ) throw Error(ErrorCode::InstanceMismatch, "only MatQ objects have a dimension");
    return dim_;
}

const Word& Object::word() const {
    if (instance_ == Instance::MatQ) throw Error(ErrorCode::InstanceMismatch, "MatQ objects have no word");
    return word_;
}

bool Object::is_unit() const noexcept {
    return instance_ == Instance::MatQ ? dim_ == 1 : word_.empty();
}

std::string describe(const Object& o) {
    if (o.instance() == Instance::MatQ) return std::to_string(o.dim());
    if (o.word().empty()) return "I";
    std::string s;
    for (const auto& g : o.word()) s += (s.empty() ? "" : " ") + g;
    return "[" + s + "]";
}

// ---------------------------------------------------------------------------
// Permutation helpers

void check_bijection(std::span<const std::size_t> perm, std::size_t n) {
    if (perm.size() != n) {
        throw Error(ErrorCode::NotABijection,
                    "permutation has " + std::to_string(perm.size()) + " entries, expected " + std::to_string(n));
    }
    std::vector<bool> hit(n, false);
    for (std::size_t p : perm) {
        if (p >= n || hit[p]) throw Error(ErrorCode::NotABijection, "not a bijection of positions");
        hit[p] = true;
    }
}

std::vector<std::size_t> invert_permutation(std::span<const std::size_t> perm) {
    check_bijection(perm, perm.size());
    std::vector<std::size_t> inv(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) inv[perm[i]] = i;
    return inv;
}

std::vector<std::size_t> reorder_permutation(std::span<const std::string> from, std::span<const std::string> to) {
    if (from.size() != to.size()) throw Error(ErrorCode::NotABijection, "orders have different lengths");
    std::map<std::string, std::size_t> position;
    for (std::size_t j = 0; j < to.size(); ++j) {
        if (!position.emplace(to[j], j).second) throw Error(ErrorCode::NotABijection, "repeated id '" + to[j] + "'");
    }
    std::vector<std::size_t> perm;
    perm.reserve(from.size());
    for (const auto& id : from) {
        auto it = position.find(id);
        if (it == position.end()) throw Error(ErrorCode::NotABijection, "id '" + id + "' missing from target order");
        perm.push_back(it->second);
    }
    check_bijection(perm, perm.size());
    return perm;
}

std::vector<std::size_t> adjacent_transpositions(std::span<const std::size_t> perm) {
    check_bijection(perm, perm.size());
    std::vector<std::size_t> dest(perm.begin(), perm.end());
    std::vector<std::size_t> swaps;
    for (std::size_t pass = 0; pass < dest.size(); ++pass) {
        bool moved = false;
        for (std::size_t k = 0; k + 1 < dest.size(); ++k) {
            if (dest[k] > dest[k + 1]) {
                std::swap(dest[k], dest[k + 1]);
                swaps.push_back(k);
                moved = true;
            }
        }
        if (!moved) break;
    }
    return swaps;
}

// ---------------------------------------------------------------------------
// Morphisms

Morphism Morphism::matrix(Matrix m) {
    if (m.rows() == 0 || m.cols() == 0) throw Error(ErrorCode::InvalidMorphism, "MatQ matrices are at least 1x1");
    Object dom = Object::dimension(m.cols());
    Object cod = Object::dimension(m.rows());
    return Morphism(std::move(dom), std::move(cod), std::move(m));
}

Morphism Morphism::permutation(Word dom, std::vector<std::size_t> image) {
    check_bijection(image, dom.size());
    Word cod(dom.size());
    for (std::size_t i = 0; i < dom.size(); ++i) cod[image[i]] = dom[i];
    Object d = Object::word(Instance::PermCat, dom);
    Object c = Object::word(Instance::PermCat, std::move(cod));
    return Morphism(std::move(d), std::move(c), Permutation{std::move(dom), std::move(image)});
}

Morphism Morphism::diagram(StringDiagram d) {
    Object dom = Object::word(Instance::FreeSmc, d.dom());
    Object cod = Object::word(Instance::FreeSmc, d.cod());
    return Morphism(std::move(dom), std::move(cod), std::move(d));
}

Morphism Morphism::generator(const Signature& sig, const std::string& name) {
    return diagram(StringDiagram::generator(sig.generator(name)));
}

const Matrix& Morphism::as_matrix() const {
    if (auto* m = std::get_if<Matrix>(&payload_)) return *m;
    throw Error(ErrorCode::InstanceMismatch, "morphism is not a MatQ matrix");
}

const Permutation& Morphism::as_permutation() const {
    if (auto* p = std::get_if<Permutation>(&payload_)) return *p;
    throw Error(ErrorCode::InstanceMismatch, "morphism is not a PermCat bijection");
}

const StringDiagram& Morphism::as_diagram() const {
    if (auto* d = std::get_if<StringDiagram>(&payload_)) return *d;
    throw Error(ErrorCode::InstanceMismatch, "morphism is not a FreeSmc diagram");
}

namespace {

void same_instance(Instance a, Instance b) {
    if (a != b) {
        throw Error(ErrorCode::InstanceMismatch,
                    "mixing instances " + std::string(to_string(a)) + " and " + std::string(to_string(b)));
    }
}

Word concat(const Word& a, const Word& b) {
    Word w = a;
    w.insert(w.end(), b.begin(), b.end());
    return w;
}

}  // namespace

Object tensor_obj(const Object& a, const Object& b) {
    same_instance(a.instance(), b.instance());
    if (a.instance() == Instance::MatQ) return Object::dimension(a.dim() * b.dim());
    return Object::word(a.instance(), concat(a.word(), b.word()));
}

Object tensor_objs(Instance instance, std::span<const Object> objs) {
    Object acc = Object::unit(instance);
    for (const auto& o : objs) acc = tensor_obj(acc, o);
    return acc;
}

Morphism identity(const Object& a) {
    switch (a.instance()) {
        case Instance::MatQ: return Morphism::matrix(Matrix::identity(a.dim()));
        case Instance::PermCat: {
            std::vector<std::size_t> image(a.word().size());
            std::iota(image.begin(), image.end(), 0);
            return Morphism::permutation(a.word(), std::move(image));
        }
        case Instance::FreeSmc: return Morphism::diagram(StringDiagram::identity(a.word()));
    }
    throw Error(ErrorCode::InstanceMismatch, "unknown instance");
}

Morphism compose_mor(const Morphism& g, const Morphism& f) {
    same_instance(g.instance(), f.instance());
    if (!(f.cod() == g.dom())) {
        throw Error(ErrorCode::BoundaryMismatch,
                    "cannot compose: codomain " + describe(f.cod()) + " vs domain " + describe(g.dom()));
    }
    switch (f.instance()) {
        case Instance::MatQ: return Morphism::matrix(g.as_matrix() * f.as_matrix());
        case Instance::PermCat: {
            const auto& pf = f.as_permutation();
            const auto& pg = g.as_permutation();
            std::vector<std::size_t> image(pf.image.size());
            for (std::size_t i = 0; i < image.size(); ++i) image[i] = pg.image[pf.image[i]];
            return Morphism::permutation(pf.dom, std::move(image));
        }
        case Instance::FreeSmc: return Morphism::diagram(compose(g.as_diagram(), f.as_diagram()));
    }
    throw Error(ErrorCode::InstanceMismatch, "unknown instance");
}

Morphism tensor_mor(const Morphism& f, const Morphism& g) {
    same_instance(f.instance(), g.instance());
    switch (f.instance()) {
        case Instance::MatQ: return Morphism::matrix(kron(f.as_matrix(), g.as_matrix()));
        case Instance::PermCat: {
            const auto& pf = f.as_permutation();
            const auto& pg = g.as_permutation();
            std::vector<std::size_t> image = pf.image;
            for (std::size_t j : pg.image) image.push_back(j + pf.image.size());
            return Morphism::permutation(concat(pf.dom, pg.dom), std::move(image));
        }
        case Instance::FreeSmc: return Morphism::diagram(tensor(f.as_diagram(), g.as_diagram()));
    }
    throw Error(ErrorCode::InstanceMismatch, "unknown instance");
}

Morphism tensor_mors(Instance instance, std::span<const Morphism> mors) {
    if (mors.empty()) return identity(Object::unit(instance));
    Morphism acc = mors.front();
    for (std::size_t i = 1; i < mors.size(); ++i) acc = tensor_mor(acc, mors[i]);
    same_instance(instance, acc.instance());
    return acc;
}

Morphism symmetry(const Object& a, const Object& b) {
    same_instance(a.instance(), b.instance());
    if (a.instance() == Instance::MatQ) {
        const std::size_t m = a.dim();
        const std::size_t n = b.dim();
        Matrix k(m * n, m * n);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j) k(j * m + i, i * n + j) = 1;
        return Morphism::matrix(std::move(k));
    }
    const std::size_t m = a.word().size();
    const std::size_t n = b.word().size();
    std::vector<std::size_t> image(m + n);
    for (std::size_t i = 0; i < m; ++i) image[i] = i + n;
    for (std::size_t j = 0; j < n; ++j) image[m + j] = j;
    Word dom = concat(a.word(), b.word());
    if (a.instance() == Instance::PermCat) return Morphism::permutation(std::move(dom), std::move(image));
    return Morphism::diagram(StringDiagram::permutation(dom, image));
}

Morphism perm_to_symmetry(Instance instance, std::span<const std::size_t> perm, std::span<const Object> objs) {
    check_bijection(perm, objs.size());
    for (const auto& o : objs) same_instance(instance, o.instance());
    const std::size_t k = objs.size();
    std::vector<std::size_t> target_of_slot(k);  // inverse: which source factor sits at target slot j
    for (std::size_t i = 0; i < k; ++i) target_of_slot[perm[i]] = i;

    if (instance == Instance::MatQ) {
        std::vector<std::size_t> dims(k), tdims(k);
        for (std::size_t i = 0; i < k; ++i) dims[i] = objs[i].dim();
        for (std::size_t j = 0; j < k; ++j) tdims[j] = dims[target_of_slot[j]];
        // Row-major strides, first factor most significant.
        std::vector<std::size_t> tstride(k, 1);
        for (std::size_t j = k; j-- > 1;) tstride[j - 1] = tstride[j] * tdims[j];
        std::size_t total = 1;
        for (auto d : dims) total *= d;
        Matrix m(total, total);
        std::vector<std::size_t> digit(k, 0);
        for (std::size_t col = 0; col < total; ++col) {
            std::size_t row = 0;
            for (std::size_t i = 0; i < k; ++i) row += digit[i] * tstride[perm[i]];
            m(row, col) = 1;
            for (std::size_t i = k; i-- > 0;) {
                if (++digit[i] < dims[i]) break;
                digit[i] = 0;
            }
        }
        return Morphism::matrix(std::move(m));
    }

    // Word instances: factor i occupies a block of positions that moves as a unit.
    std::vector<std::size_t> offset(k + 1, 0), toffset(k + 1, 0);
    for (std::size_t i = 0; i < k; ++i) offset[i + 1] = offset[i] + objs[i].word().size();
    for (std::size_t j = 0; j < k; ++j) toffset[j + 1] = toffset[j] + objs[target_of_slot[j]].word().size();
    Word dom;
    std::vector<std::size_t> image(offset[k]);
    for (std::size_t i = 0; i < k; ++i) {
        const auto& w = objs[i].word();
        dom.insert(dom.end(), w.begin(), w.end());
        for (std::size_t r = 0; r < w.size(); ++r) image[offset[i] + r] = toffset[perm[i]] + r;
    }
    if (instance == Instance::PermCat) return Morphism::permutation(std::move(dom), std::move(image));
    return Morphism::diagram(StringDiagram::permutation(dom, image));
}

Morphism symmetry_by_transpositions(Instance instance, std::span<const std::size_t> swaps,
                                    std::span<const Object> objs) {
    std::vector<Object> current(objs.begin(), objs.end());
    for (const auto& o : current) same_instance(instance, o.instance());
    Morphism acc = identity(tensor_objs(instance, current));
    for (std::size_t k : swaps) {
        if (k + 1 >= current.size()) throw Error(ErrorCode::NotABijection, "transposition out of range");
        auto span = std::span<const Object>(current);
        Morphism left = identity(tensor_objs(instance, span.subspan(0, k)));
        Morphism right = identity(tensor_objs(instance, span.subspan(k + 2)));
        Morphism layer = tensor_mor(tensor_mor(left, symmetry(current[k], current[k + 1])), right);
        acc = compose_mor(layer, acc);
        std::swap(current[k], current[k + 1]);
    }
    return acc;
}

bool mor_equal(const Morphism& f, const Morphism& g) {
    same_instance(f.instance(), g.instance());
    if (!(f.dom() == g.dom()) || !(f.cod() == g.cod())) return false;
    switch (f.instance()) {
        case Instance::MatQ: return f.as_matrix() == g.as_matrix();
        case Instance::PermCat: return f.as_permutation() == g.as_permutation();
        case Instance::FreeSmc: return isomorphic(f.as_diagram(), g.as_diagram());
    }
    return false;
}

std::optional<Morphism> invert_mor(const Morphism& f) {
    switch (f.instance()) {
        case Instance::MatQ: {
            auto inv = f.as_matrix().inverse();
            if (!inv) return std::nullopt;
            return Morphism::matrix(std::move(*inv));
        }
        case Instance::PermCat: {
            const auto& p = f.as_permutation();
            return Morphism::permutation(f.cod().word(), invert_permutation(p.image));
        }
        case Instance::FreeSmc: {
            const auto& d = f.as_diagram();
            if (!d.nodes().empty()) return std::nullopt;
            std::vector<std::size_t> image(d.outputs().size());
            for (std::size_t k = 0; k < d.outputs().size(); ++k) image[d.outputs()[k].index] = k;
            return Morphism::diagram(StringDiagram::permutation(d.cod(), invert_permutation(image)));
        }
    }
    return std::nullopt;
}

std::string describe(const Morphism& m) {
    std::string kind;
    switch (m.instance()) {
        case Instance::MatQ: kind = "matrix"; break;
        case Instance::PermCat: kind = "permutation"; break;
        case Instance::FreeSmc: kind = "diagram"; break;
    }
    return kind + " " + describe(m.dom()) + " -> " + describe(m.cod());
}

}  // namespace causalnet

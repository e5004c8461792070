#include "morsetrack/io.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "morsetrack/errors.hpp"

namespace morsetrack {

namespace {

// Next header token, skipping whitespace and '#' comments.
std::string pnm_token(std::istream& in) {
    std::string tok;
    int c;
    while ((c = in.get()) != EOF) {
        if (c == '#') {
            while ((c = in.get()) != EOF && c != '\n') {
            }
            continue;
        }
        if (!std::isspace(c)) {
            tok.push_back(static_cast<char>(c));
            break;
        }
    }
    while ((c = in.get()) != EOF && !std::isspace(c))
        tok.push_back(static_cast<char>(c));
    return tok;
}

long parse_long(const std::string& tok, const std::string& what) {
    if (tok.empty())
        throw InputError("pgm: missing " + what + " in header");
    for (char ch : tok)
        if (!std::isdigit(static_cast<unsigned char>(ch)))
            throw InputError("pgm: malformed " + what + " '" + tok + "'");
    return std::stol(tok);
}

} // namespace

Image8 read_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("cannot open '" + path + "'");
    std::string magic = pnm_token(in);
    if (magic != "P5")
        throw InputError("pgm '" + path + "': expected binary P5, got '" + magic + "'");
    long w = parse_long(pnm_token(in), "width");
    long h = parse_long(pnm_token(in), "height");
    long maxval = parse_long(pnm_token(in), "maxval");
    if (w <= 0 || h <= 0)
        throw InputError("pgm '" + path + "': bad dimensions");
    if (maxval <= 0 || maxval > 255)
        throw InputError("pgm '" + path + "': maxval " + std::to_string(maxval) +
                         " out of range (1..255)");
    // The header ends with exactly one whitespace byte, already consumed by
    // the tokenizer.
    Image8 img;
    img.width = static_cast<int>(w);
    img.height = static_cast<int>(h);
    img.pixels.resize(static_cast<std::size_t>(w) * static_cast<std::size_t>(h));
    in.read(reinterpret_cast<char*>(img.pixels.data()),
            static_cast<std::streamsize>(img.pixels.size()));
    if (in.gcount() != static_cast<std::streamsize>(img.pixels.size()))
        throw InputError("pgm '" + path + "': truncated pixel data");
    return img;
}

void write_pgm(const std::string& path, const Image8& img) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw InputError("cannot write '" + path + "'");
    out << "P5\n" << img.width << " " << img.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.pixels.data()),
              static_cast<std::streamsize>(img.pixels.size()));
    if (!out)
        throw InputError("write failed for '" + path + "'");
}

CellComplex read_off(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open '" + path + "'");
    std::string line;
    auto next_line = [&](const std::string& what) {
        while (std::getline(in, line)) {
            std::size_t start = line.find_first_not_of(" \t\r");
            if (start == std::string::npos || line[start] == '#')
                continue;
            return;
        }
        throw InputError("off '" + path + "': unexpected end of file (" + what + ")");
    };

    next_line("header");
    {
        std::istringstream hs(line);
        std::string magic;
        hs >> magic;
        if (magic != "OFF")
            throw InputError("off '" + path + "': missing OFF header");
    }
    next_line("counts");
    long nv = 0, nf = 0, ne = 0;
    {
        std::istringstream cs(line);
        if (!(cs >> nv >> nf >> ne) || nv < 0 || nf < 0)
            throw InputError("off '" + path + "': malformed counts line");
    }

    CellComplex K;
    for (long i = 0; i < nv; ++i) {
        next_line("vertex");
        std::istringstream vs(line);
        double x, y, z = 0.0;
        if (!(vs >> x >> y))
            throw InputError("off '" + path + "': malformed vertex line");
        vs >> z;
        CellId v = K.add_cell(0, {});
        K.set_anchor(v, {x, y});
    }

    std::map<std::pair<CellId, CellId>, CellId> edges;
    auto edge_between = [&](CellId a, CellId b) {
        if (a > b)
            std::swap(a, b);
        auto it = edges.find({a, b});
        if (it != edges.end())
            return it->second;
        CellId e = K.add_cell(1, {a, b});
        edges[{a, b}] = e;
        return e;
    };

    for (long i = 0; i < nf; ++i) {
        next_line("face");
        std::istringstream fs(line);
        long k = 0;
        if (!(fs >> k))
            throw InputError("off '" + path + "': malformed face line");
        std::vector<CellId> idx;
        for (long j = 0; j < k; ++j) {
            long v;
            if (!(fs >> v) || v < 0 || v >= nv)
                throw InputError("off '" + path + "': face references bad vertex");
            idx.push_back(static_cast<CellId>(v));
        }
        if (k == 2) {
            edge_between(idx[0], idx[1]);
        } else if (k == 3) {
            CellId e0 = edge_between(idx[0], idx[1]);
            CellId e1 = edge_between(idx[1], idx[2]);
            CellId e2 = edge_between(idx[0], idx[2]);
            K.add_cell(2, {e0, e1, e2});
        } else {
            throw InputError("off '" + path + "': only segment and triangle faces supported");
        }
    }
    return K;
}

std::vector<double> read_value_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open '" + path + "'");
    std::vector<double> values;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos)
            continue;
        try {
            std::size_t used = 0;
            double v = std::stod(line.substr(start), &used);
            std::size_t rest = line.find_first_not_of(" \t\r", start + used);
            if (rest != std::string::npos)
                throw std::invalid_argument("trailing");
            values.push_back(v);
        } catch (const std::exception&) {
            throw InputError("csv '" + path + "': bad value on line " +
                             std::to_string(lineno));
        }
    }
    return values;
}

} // namespace morsetrack

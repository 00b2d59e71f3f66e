// Umbrella header for the library. The command-line driver (cli.hpp) is
// separate because it needs OpenSSL for digests.

#ifndef HYPERDEPTH_HYPERDEPTH_HPP
#define HYPERDEPTH_HYPERDEPTH_HPP

#include "hyperdepth/rational.hpp"
#include "hyperdepth/lp.hpp"
#include "hyperdepth/geometry.hpp"
#include "hyperdepth/instance.hpp"
#include "hyperdepth/parallel.hpp"
#include "hyperdepth/depth.hpp"
#include "hyperdepth/tverberg.hpp"
#include "hyperdepth/enclosing.hpp"
#include "hyperdepth/axioms.hpp"
#include "hyperdepth/arrangement2d.hpp"
#include "hyperdepth/transversal.hpp"

#endif  // HYPERDEPTH_HYPERDEPTH_HPP

import pytfg


def odo():
    return pytfg.builtin_system("odometer2")


def fib():
    return pytfg.builtin_system("fibonacci")


def test_index_of_t():
    for s in (odo(), fib()):
        assert pytfg.index(pytfg.t_power(s, 1)) == 1
        assert pytfg.index(pytfg.t_power(s, -2)) == -2


def test_element_text_round_trip():
    s = fib()
    for seed in range(5):
        g = pytfg.random_element(s, seed)
        assert pytfg.parse_element(s, str(g)) == g


def test_factorization_recomposes():
    s = odo()
    t = pytfg.t_power(s, 1)
    f = pytfg.factorize(t, 2)
    assert f.perms == [[1, 2, 3, 4, 5, 6, 7, 0]]
    assert f.up == {0: 1}
    assert f.p * f.r == t
    assert "U(0)^1" in pytfg.factorize(t).report()


def test_clopen_algebra():
    s = odo()
    a = pytfg.parse_clopen(s, "0@0")
    assert str(a.translate(1)) == "1@0"
    assert (a | ~a) == pytfg.parse_clopen(s, "FULL")
    assert (a & ~a).is_empty()


def test_kernel_decomposition():
    s = odo()
    q = pytfg.t_power(s, 1) * pytfg.three_cycle(s) * pytfg.t_power(s, -1)
    p1, p2, log = pytfg.kernel_decompose(q)
    assert p1 * p2 == q
    assert pytfg.in_stabilizer(p1, "primary")
    assert pytfg.in_stabilizer(p2, "alternate")
    assert all(line.endswith("ok") for line in log if ":" in line)


def test_separation_and_lef():
    s = odo()
    g, a, b = pytfg.separation_witness(pytfg.parse_clopen(s, "0@0"))
    assert g.order(5) == 3
    assert g == a * b * a.inverse() * b.inverse()
    f = [pytfg.identity(s), pytfg.t_power(s, 1), pytfg.three_cycle(s)]
    text, ok = pytfg.lef_witness(f)
    assert ok and text.startswith("lef level=")
    assert pytfg.verify_witness(text, f)


def test_errors_map_to_exceptions():
    s = odo()
    try:
        pytfg.kernel_decompose(pytfg.t_power(s, 1))
    except pytfg.PreconditionError:
        pass
    else:
        raise AssertionError("expected PreconditionError")
    try:
        pytfg.parse_clopen(s, "0@")
    except pytfg.ParseError:
        pass
    else:
        raise AssertionError("expected ParseError")


def test_structure_and_selftest():
    ok, text = pytfg.odometer_structure(2)
    assert ok, text
    ok, line = pytfg.run_criterion(9, 1)
    assert ok and line.startswith("PASS C9")

import json
import random

import pytest

from bandlink import (
    close,
    close_mask,
    coloring_from_trace,
    face_masks,
    faces,
    format_trace,
    parse_trace,
    percolates,
    trace_to_json,
)
from bandlink.errors import UnknownVertex
from helpers import random_map, sequential_close


class TestCurl:
    def test_empty_set_percolates(self, curl):
        assert percolates(curl, faces(curl), ())

    def test_single_vertex_faces_fire_first(self, curl):
        coloring, trace = close(curl, faces(curl), ())
        assert coloring.complete
        assert coloring.step_of(1) == 1
        assert trace.entries[0].face == 1

    def test_manual_vertex_is_step_zero(self, curl):
        coloring, _ = close(curl, faces(curl), [1])
        assert coloring.step_of(1) == 0
        assert coloring.auto == {}


class TestTriangle:
    def test_needs_two_vertices(self, triangle):
        fs = faces(triangle)
        assert not percolates(triangle, fs, ())
        assert not percolates(triangle, fs, [2])
        assert percolates(triangle, fs, [1, 3])

    def test_close_records_witness_face(self, triangle):
        coloring, trace = close(triangle, faces(triangle), [1, 3])
        assert coloring.complete
        assert coloring.auto == {2: 1}
        assert trace.entries == (trace.entries[0],)
        assert trace.entries[0].vertex == 2
        assert trace.entries[0].face == 1

    def test_face_steps(self, triangle):
        coloring, _ = close(triangle, faces(triangle), [1, 3])
        assert coloring.face_steps == {1: 1, 2: 1}


class TestArguments:
    def test_unknown_vertex_rejected(self, triangle):
        with pytest.raises(UnknownVertex):
            close(triangle, faces(triangle), [4])
        with pytest.raises(UnknownVertex):
            percolates(triangle, faces(triangle), [0])

    def test_manual_may_repeat(self, triangle):
        coloring, _ = close(triangle, faces(triangle), [1, 1, 3])
        assert coloring.manual == frozenset({1, 3})


class TestTraceFormats:
    def test_text_round_trip(self, triangle):
        _, trace = close(triangle, faces(triangle), [1, 3])
        assert parse_trace(format_trace(trace)) == trace

    def test_json_round_trip(self, triangle):
        _, trace = close(triangle, faces(triangle), [1, 3])
        text = trace_to_json(trace)
        assert parse_trace(text) == trace
        assert json.loads(text)["manual"] == [1, 3]

    def test_text_layout(self, triangle):
        _, trace = close(triangle, faces(triangle), [1, 3])
        assert format_trace(trace) == "manual: 1 3\nstep 1 vertex 2 face 1\n"

    def test_coloring_from_trace(self, triangle):
        coloring, trace = close(triangle, faces(triangle), [1, 3])
        again = coloring_from_trace(trace, triangle.vertex_count)
        assert again.colored == coloring.colored
        assert again.step_of(2) == coloring.step_of(2)


class TestMaskCore:
    def test_masks_match_close(self):
        rng = random.Random(21)
        for _ in range(40):
            m = random_map(rng)
            fs = faces(m)
            masks = face_masks(fs)
            manual = {
                v for v in range(1, m.vertex_count + 1) if rng.random() < 0.3
            }
            start = 0
            for v in manual:
                start |= 1 << (v - 1)
            closed = close_mask(masks, start)
            coloring, _ = close(m, fs, manual)
            assert closed == sum(1 << (v - 1) for v in coloring.colored)


class TestClosureProperties:
    def test_monotone_idempotent_schedule_free(self):
        rng = random.Random(22)
        for _ in range(60):
            m = random_map(rng)
            fs = faces(m)
            everybody = range(1, m.vertex_count + 1)
            small = {v for v in everybody if rng.random() < 0.25}
            grown = small | {v for v in everybody if rng.random() < 0.25}
            closed_small, _ = close(m, fs, small)
            closed_grown, _ = close(m, fs, grown)
            assert closed_small.colored <= closed_grown.colored
            again, _ = close(m, fs, closed_small.colored)
            assert again.colored == closed_small.colored
            assert sequential_close(rng, fs, small) == closed_small.colored

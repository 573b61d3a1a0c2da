"""
Tests smpleak/plot.py

Testing objective:
    The plot is a well-formed SVG document with one polyline per series.
"""
import unittest
from xml.etree import ElementTree

from smpleak import plot
from smpleak.bounds import QuantumModel, bound_curve
from smpleak.errors import ValidationError

SVG = '{http://www.w3.org/2000/svg}'


class PlotTest(unittest.TestCase):
    def test_curve_svg(self):
        curve = bound_curve([1e4, 1e6, 1e8], 0.01, QuantumModel(), grid_size=20)
        root = ElementTree.fromstring(plot.curve_svg(curve))
        lines = root.findall(SVG + 'polyline')
        self.assertEqual(len(lines), 3)
        for line in lines:
            self.assertEqual(len(line.get('points').split()), 3)
        labels = [text.text for text in root.findall(SVG + 'text')]
        self.assertIn('il_lower', labels)
        self.assertIn('epsilon = 0.01', labels)

    def test_single_point(self):
        svg = plot.svg_plot([10.0], [('flat', [1.0])])
        self.assertTrue(svg.startswith('<svg'))
        self.assertTrue(svg.endswith('</svg>\n'))

    def test_nonpositive_x(self):
        with self.assertRaises(ValidationError):
            plot.svg_plot([0.0, 1.0], [('a', [1.0, 2.0])])
        with self.assertRaises(ValidationError):
            plot.svg_plot([], [])


if __name__ == '__main__':
    unittest.main()

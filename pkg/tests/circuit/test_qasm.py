from unittest import TestCase
from cubewalk.core import hypercube, augmented_cube
from cubewalk.core.types import BitString
from cubewalk.circuit import (CoinStrategy, Gate, GateProgram, McxLowering, compile_walk, compile_step, emit_qasm,
                              parse_qasm, execute_program, to_walk_state, expand_controlled_rotations,
                              lower_mcx_ancilla_ladder, verify_walk)
from cubewalk.circuit.qasm import _real, _statement
from cubewalk.exceptions import ProgramFormatError
from cubewalk.walk import position_distribution


class EmitQasmTestCase(TestCase):
    def test_simple_statements(self):
        text = emit_qasm(GateProgram(2, 1, [Gate.h(2), Gate.mcx([2], 0), Gate.x(1)]))
        lines = text.splitlines()
        self.assertIn("h q[2];", lines)
        self.assertIn("cx q[2],q[0];", lines)
        self.assertIn("x q[1];", lines)

    def test_layout(self):
        text = emit_qasm(compile_walk(hypercube(2), 2))
        lines = text.splitlines()
        self.assertEqual('OPENQASM 2.0;', lines[0])
        self.assertEqual('include "qelib1.inc";', lines[1])
        self.assertEqual('// cubewalk program n=2 m=1 mcx=opaque', lines[2])
        self.assertIn('qreg q[3];', lines)
        self.assertIn('creg c[2];', lines)
        self.assertEqual(['measure q[0] -> c[0];', 'measure q[1] -> c[1];'], lines[-2:])
        self.assertFalse(any(line.startswith('qreg anc') for line in lines))
        self.assertTrue(text.endswith('\n'))

    def test_global_phase(self):
        text = emit_qasm(GateProgram(1, 1, [Gate.gphase(1j), Gate.h(1), Gate.gphase(1j)]))
        lines = text.splitlines()
        self.assertEqual('// global phase -1.0 0.0', lines[3])
        self.assertEqual(2, lines.count('// gphase 0.0 1.0'))

    def test_stable(self):
        g = augmented_cube(3)
        p = compile_walk(g, 2, CoinStrategy.PREPARE_REFLECT)
        for lowering in McxLowering:
            self.assertEqual(emit_qasm(p, lowering), emit_qasm(p, lowering))

    def test_opaque_declarations(self):
        g = augmented_cube(3)
        text = emit_qasm(compile_step(g, CoinStrategy.PREPARE_REFLECT), McxLowering.OPAQUE)
        self.assertIn('opaque mcx3 c0,c1,c2,t;', text.splitlines())
        self.assertIn('mcx3 q[3],q[4],q[5],q[0];', text.splitlines())
        self.assertNotIn('cry', text)

    def test_ancilla_ladder(self):
        g = augmented_cube(3)
        text = emit_qasm(compile_step(g, CoinStrategy.PREPARE_REFLECT), 'ancilla-ladder')
        lines = text.splitlines()
        self.assertIn('qreg anc[2];', lines)
        self.assertFalse(any(line.startswith(('opaque', 'mcx')) for line in lines))
        self.assertIn('ccx q[3],q[4],anc[0];', lines)

    def test_controlled_rotation_needs_expansion(self):
        p = GateProgram(1, 1, [Gate.cry([1], 0, 0.5)])
        with self.assertRaises(ProgramFormatError) as context:
            _statement(p, p.gates[0])
        self.assertIn("expand controlled rotations first", str(context.exception))

    def test_real_format(self):
        self.assertEqual('0.5', _real(0.5))
        self.assertEqual('2.0', _real(2))
        self.assertEqual('-0.0', _real(-0.0))
        self.assertEqual('1.0e-20', _real(1e-20))


class ParseQasmTestCase(TestCase):
    def test_round_trip_diffusion(self):
        p = compile_walk(hypercube(2), 2)
        self.assertEqual(p, parse_qasm(emit_qasm(p)))

    def test_round_trip_rotations(self):
        p = compile_walk(augmented_cube(3), 2, CoinStrategy.PREPARE_REFLECT)
        self.assertEqual(expand_controlled_rotations(p), parse_qasm(emit_qasm(p)))

    def test_round_trip_ancilla_ladder(self):
        g = augmented_cube(3)
        p = compile_walk(g, 2, CoinStrategy.PREPARE_REFLECT)
        parsed = parse_qasm(emit_qasm(p, McxLowering.ANCILLA_LADDER))
        self.assertEqual(lower_mcx_ancilla_ladder(expand_controlled_rotations(p)), parsed)
        self.assertEqual(2, parsed.ancillas)
        self.assertTrue(verify_walk(g, 2, program=parsed).passed)

    def test_executed_round_trip_reaches_target(self):
        g = hypercube(2)
        p = parse_qasm(emit_qasm(compile_walk(g, 2)))
        dist = position_distribution(to_walk_state(g, p, execute_program(p)))
        self.assertAlmostEqual(1.0, dist[BitString.from_string('11')], places=12)

    def test_layout_inferred(self):
        p = parse_qasm(emit_qasm(compile_step(hypercube(3), CoinStrategy.PREPARE_REFLECT)))
        self.assertEqual(3, p.n)
        self.assertEqual(2, p.m)
        self.assertEqual(0, p.ancillas)

    def test_missing_registers(self):
        with self.assertRaises(ProgramFormatError) as context:
            parse_qasm('OPENQASM 2.0;\nqreg q[3];\nh q[2];\n')
        self.assertIn("needs 'qreg q[..]' and 'creg c[..]'", str(context.exception))

    def test_unsupported_statements(self):
        header = 'OPENQASM 2.0;\nqreg q[3];\ncreg c[2];\n'
        with self.assertRaises(ProgramFormatError) as context:
            parse_qasm(header + 'cz q[0],q[1];\n')
        self.assertIn("Unsupported gate", str(context.exception))

        with self.assertRaises(ProgramFormatError) as context:
            parse_qasm(header + 'gate foo a { x a; }\n')
        self.assertIn("Line 4: unsupported statement", str(context.exception))

        with self.assertRaises(ProgramFormatError) as context:
            parse_qasm(header + 'h r[0];\n')
        self.assertIn("Unknown operand 'r[0]'", str(context.exception))

        with self.assertRaises(ProgramFormatError) as context:
            parse_qasm(header + '// gphase 1.0 x\n')
        self.assertIn("invalid phase annotation", str(context.exception))

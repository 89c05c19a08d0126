using System;
using System.Collections;
using System.Windows.Forms;

public class PhsaA4 : ClassPHSA {
    public readonly ConditionScheme conditionScheme = new ConditionScheme();
    public readonly Memory memory = new Memory();
    public readonly IOSystem ioSystem = new IOSystem();

    public PhsaA4(string name, Dispatcher dispatcher, ClassPHSA parent) : base(name, "A4", dispatcher, parent, "a4_s0") {
        states["a4_s0"] = new State("A4_S0", "S0", "initial", ordered());
        states["a4_idle"] = new State("A4_Idle", "Idle", "ordinary", ordered());
        states["a4_end"] = new State("A4_End", "End", "final", ordered());
        events["ev5"] = new Event("ev5", "Start reading the PIN code");
        events["shutdown"] = new Event("shutdown", "Power off");
        transitions["1"] = new Transition("a4_s0", null, null, "a4_idle");
        transitions["2"] = new Transition("a4_idle", "ev5", null, "a4_idle");
        transitions["3"] = new Transition("a4_idle", "shutdown", null, "a4_end");
    }

    public override void handler() {
        if (_cstate.Equals("a4_s0")) {
            _cstate="a4_idle";
        }
        else if (_cstate.Equals("a4_idle")) {
            if (_event.Equals("ev5")) {
                _cstate="a4_idle";
            }
            else if (_event.Equals("shutdown")) {
                _cstate="a4_end";
            }
        }
    }

    protected override bool enabled(string ev) {
        if (_cstate.Equals("a4_idle")) {
            return ev.Equals("ev5") || ev.Equals("shutdown");
        }
        return false;
    }

    public class ConditionScheme {
        public readonly Hashtable guards = new Hashtable();
        public readonly Hashtable funcActions = new Hashtable();

        public ConditionScheme() {
        }
    }

    public class Memory {
        public readonly Hashtable variables = new Hashtable();

        public Memory() {
        }
    }

    public class IOSystem {
        public readonly Hashtable ioActions = new Hashtable();

        public IOSystem() {
        }
    }
}

using System;
using System.Collections;
using System.Windows.Forms;

public class PhsaA2 : ClassPHSA {
    public readonly ConditionScheme conditionScheme = new ConditionScheme();
    public readonly Memory memory = new Memory();
    public readonly IOSystem ioSystem = new IOSystem();

    public PhsaA2(string name, Dispatcher dispatcher, ClassPHSA parent) : base(name, "A2", dispatcher, parent, "a2_s0") {
        states["a2_s0"] = new State("A2_S0", "S0", "initial", ordered());
        states["a2_idle"] = new State("A2_Idle", "Idle", "ordinary", ordered());
        states["a2_end"] = new State("A2_End", "End", "final", ordered());
        events["ev1"] = new Event("ev1", "Display welcome message");
        events["ev4"] = new Event("ev4", "Display PIN prompt");
        events["ev9"] = new Event("ev9", "Display user menu");
        events["ev10"] = new Event("ev10", "Display wrong code message");
        events["ev11"] = new Event("ev11", "Display card confiscated message");
        events["ev14"] = new Event("ev14", "Display goodbye message");
        events["shutdown"] = new Event("shutdown", "Power off");
        transitions["1"] = new Transition("a2_s0", null, null, "a2_idle");
        transitions["2"] = new Transition("a2_idle", "ev1", null, "a2_idle");
        transitions["3"] = new Transition("a2_idle", "ev4", null, "a2_idle");
        transitions["4"] = new Transition("a2_idle", "ev9", null, "a2_idle");
        transitions["5"] = new Transition("a2_idle", "ev10", null, "a2_idle");
        transitions["6"] = new Transition("a2_idle", "ev11", null, "a2_idle");
        transitions["7"] = new Transition("a2_idle", "ev14", null, "a2_idle");
        transitions["8"] = new Transition("a2_idle", "shutdown", null, "a2_end");
    }

    public override void handler() {
        if (_cstate.Equals("a2_s0")) {
            _cstate="a2_idle";
        }
        else if (_cstate.Equals("a2_idle")) {
            if (_event.Equals("ev1")) {
                _cstate="a2_idle";
            }
            else if (_event.Equals("ev4")) {
                _cstate="a2_idle";
            }
            else if (_event.Equals("ev9")) {
                _cstate="a2_idle";
            }
            else if (_event.Equals("ev10")) {
                _cstate="a2_idle";
            }
            else if (_event.Equals("ev11")) {
                _cstate="a2_idle";
            }
            else if (_event.Equals("ev14")) {
                _cstate="a2_idle";
            }
            else if (_event.Equals("shutdown")) {
                _cstate="a2_end";
            }
        }
    }

    protected override bool enabled(string ev) {
        if (_cstate.Equals("a2_idle")) {
            return ev.Equals("ev1") || ev.Equals("ev4") || ev.Equals("ev9") || ev.Equals("ev10") || ev.Equals("ev11") || ev.Equals("ev14") || ev.Equals("shutdown");
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

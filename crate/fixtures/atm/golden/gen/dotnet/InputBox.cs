using System.Windows.Forms;

/// Modal text prompt used by GUI input io actions.
public static class InputBox {
    public static string Show(string prompt) {
        Form form = new Form();
        form.Text = prompt;
        form.ClientSize = new System.Drawing.Size(280, 100);
        Label label = new Label();
        label.Text = prompt;
        label.SetBounds(10, 10, 260, 20);
        TextBox box = new TextBox();
        box.SetBounds(10, 35, 260, 20);
        Button ok = new Button();
        ok.Text = "OK";
        ok.DialogResult = DialogResult.OK;
        ok.SetBounds(195, 65, 75, 25);
        form.Controls.Add(label);
        form.Controls.Add(box);
        form.Controls.Add(ok);
        form.AcceptButton = ok;
        return form.ShowDialog() == DialogResult.OK ? box.Text : "";
    }
}
